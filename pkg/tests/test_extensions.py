import numpy as np
import pytest

import oracles
from liesuper import (
    GF,
    QQ,
    FieldNotFinite,
    InvalidCocycle,
    LieSuperalgebra,
    abelian,
    by_name,
    catalog,
    central_extension_from_cocycles,
    classify_extension,
    construct_stem_cover,
    cover_dimension,
    covers_isoclinic_check,
    find_cover_epimorphism,
    hev,
    hodd,
    make_cocycle,
    multiplier,
    stem_extensions_from_cover,
    validate,
)
from liesuper.algebra import AxiomViolation, Homomorphism
from liesuper.extensions import (
    CoverMismatch,
    NotExact,
    check_cocycle,
    coboundary,
    coboundary_space,
    cocycle_space,
    slots,
    twisted_constants,
)
from liesuper.linalg import GradedDim, GradedSubspace, rank

F5 = GF(5)


@pytest.mark.parametrize("m,n", [(0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (0, 3)])
def test_abelian_multiplier_formula(m, n):
    assert tuple(multiplier(abelian(m, n)).dim) == oracles.abelian_multiplier(m, n)


def test_multiplier_examples():
    assert multiplier(hodd()).dim == GradedDim(0, 0)
    assert multiplier(hev()).dim == GradedDim(2, 0)
    assert multiplier(by_name("Hodd+A(1|0)")).dim == GradedDim(0, 1)
    assert multiplier(by_name("Hev+A(0|1)")).dim == GradedDim(3, 2)


@pytest.mark.parametrize("field", [QQ, F5])
def test_multiplier_matches_oracle(field):
    for L in catalog(field):
        assert tuple(multiplier(L).dim) == oracles.graded_multiplier_dims(L), L.name


def test_purely_even_matches_ordinary_h2():
    sl2 = validate(QQ, ["e", "f", "h"], [], {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}})
    for L in (hev(), abelian(3, 0), sl2):
        assert multiplier(L).dim.even == oracles.ungraded_h2(L)
        assert multiplier(L).dim.odd == 0


def test_coboundaries_are_cocycles():
    for L in catalog(F5):
        for parity in (0, 1):
            Z = cocycle_space(L, parity)
            B = coboundary_space(L, parity)
            ns = len(slots(L, parity))
            if B.shape[0]:
                assert rank(np.vstack([Z, B]), F5) == Z.shape[0]
            assert B.shape[0] <= Z.shape[0] <= ns


def test_coboundary_of_functional():
    L = hodd()
    b = coboundary(L, [1, 0])
    assert b.parity == 0 and b(L.vector({"y": 1}), L.vector({"y": 1})) == 1


def test_even_diagonal_must_vanish():
    L = abelian(1, 0)
    with pytest.raises(InvalidCocycle) as e:
        make_cocycle(L, 0, {(0, 0): 1})
    assert e.value.axiom == "antisymmetry"


def test_odd_diagonal_allowed():
    L = abelian(0, 1)
    b = make_cocycle(L, 0, {(0, 0): 1})
    E = central_extension_from_cocycles(L, [b])
    assert E.total.dim == GradedDim(1, 1)
    assert E.is_cover


def test_wrong_support_rejected():
    L = abelian(1, 1)
    with pytest.raises(InvalidCocycle) as e:
        make_cocycle(L, 0, {(0, 1): 1})
    assert e.value.axiom == "support"


def test_cocycle_identity_failure_agrees_with_validation():
    # [h, e] = e plus a central c; b(e, c) = 1 fails on the triple (h, e, c)
    L = validate(QQ, ["h", "e", "c"], [], {("h", "e"): {"e": 1}})
    B = QQ.zeros((3, 3))
    B[1, 2], B[2, 1] = QQ(1), QQ(-1)
    with pytest.raises(InvalidCocycle) as e:
        check_cocycle(L, 0, B)
    assert e.value.axiom == "cocycle identity"
    ev, od, c, _, _ = twisted_constants(L, [B], [])
    with pytest.raises(AxiomViolation):
        LieSuperalgebra(QQ, ev, od, c)


def test_cover_classification_and_dimension():
    for field in (QQ, F5):
        for L in catalog(field):
            E = construct_stem_cover(L)
            assert E.is_cover
            assert E.total.dim == cover_dimension(L)
            assert E.kernel <= E.total.center and E.kernel <= E.total.derived


def test_classification_tags():
    L = hodd()
    assert central_extension_from_cocycles(L).classification == "cover"  # M(Hodd) = 0
    E = central_extension_from_cocycles(L, [np.zeros((2, 2), dtype=object) + QQ(0)])
    assert E.classification == "central"
    # L = Hev, adjoin one of two multiplier classes: stem but not cover
    H = hev()
    rep = multiplier(H).even[0]
    assert central_extension_from_cocycles(H, [rep]).classification == "stem"
    # projection that is not surjective
    A = abelian(1, 0)
    with pytest.raises(NotExact):
        classify_extension(A, A, Homomorphism.zero(A, A))


def test_not_central_tag():
    # [h, e] = e over A(1|0) with kernel span(e), which is not central
    K = validate(QQ, ["h", "e"], [], {("h", "e"): {"e": 1}})
    base = abelian(1, 0)
    P = QQ.array([[1, 0]])
    assert classify_extension(base, K, Homomorphism(K, base, P)) == "not-central"


def test_multiplier_invariant_under_basis_change():
    rng = np.random.default_rng(7)
    for field in (QQ, F5):
        for L in catalog(field):
            if L.n == 0:
                continue
            G = oracles.random_graded_basis_change(L, rng)
            c = field.array(oracles.change_basis(L, G))
            M = LieSuperalgebra(field, L.even_names, L.odd_names, c)
            assert multiplier(M).dim == multiplier(L).dim


def test_stem_quotients_of_hev_cover():
    L = hev(F5)
    cover = construct_stem_cover(L)
    tags = []
    for sq in stem_extensions_from_cover(cover):
        tags.append(sq.extension.classification)
        assert sq.extension.is_stem
        g = find_cover_epimorphism(sq.extension, cover)
        assert g is not None and g.is_surjective()
        assert np.array_equal(
            sq.extension.projection.compose(g).matrix, cover.projection.matrix
        )
    # subspaces of GF(5)^2: 1 + 6 + 1
    assert len(tags) == 8
    assert tags.count("cover") == 1


def test_stem_quotients_need_finite_field():
    with pytest.raises(FieldNotFinite):
        list(stem_extensions_from_cover(construct_stem_cover(hev(QQ))))


def test_covers_isoclinic():
    L = by_name("Hodd+A(1|0)", F5)
    a = construct_stem_cover(L)
    # a second cover from a rescaled representative
    rep = multiplier(L).odd[0]
    b = central_extension_from_cocycles(L, [], [F5.reduce(2 * rep.values)])
    assert b.is_cover
    assert not np.array_equal(a.total.constants, b.total.constants)
    assert covers_isoclinic_check(L, a, b).isoclinic
    with pytest.raises(CoverMismatch):
        covers_isoclinic_check(hev(F5), a, b)


def test_kernel_subspace_is_graded():
    cover = construct_stem_cover(hev(F5))
    T = GradedSubspace.span(F5, cover.total.dim, cover.kernel.basis[:1])
    assert next(iter(stem_extensions_from_cover(cover, [T]))).extension.classification == "stem"
