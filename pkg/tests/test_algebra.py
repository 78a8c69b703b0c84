from fractions import Fraction

import numpy as np
import pytest

import oracles
from liesuper import (
    GF,
    QQ,
    GradingViolation,
    Homomorphism,
    JacobiViolation,
    NotAnIdeal,
    SkewViolation,
    abelian,
    by_name,
    catalog,
    centralizer,
    direct_sum,
    generates_algebra,
    hev,
    hodd,
    is_graded_ideal,
    minimal_homogeneous_generators,
    quotient,
    validate,
)
from liesuper.algebra import SearchCapExceeded, lower_central_series
from liesuper.linalg import GradedDim
from liesuper.search import find_isomorphism

F5 = GF(5)


def test_abelian_is_valid_and_trivial():
    A = abelian(2, 2)
    assert A.is_abelian
    u = A.vector({"x1": 1, "y2": 3})
    assert not np.any(A.bracket(u, u))


def test_hodd_validates():
    L = hodd()
    assert L.dim == GradedDim(1, 1)
    assert list(L.bracket(L.vector({"y": 1}), L.vector({"y": 1}))) == [1, 0]


def test_odd_square_into_odd_is_grading_violation():
    with pytest.raises(GradingViolation) as e:
        validate(QQ, ["x"], ["y"], {("y", "y"): {"y": 1}})
    assert e.value.labels == ("y", "y", "y")


def test_skew_violation_reported():
    c = QQ.zeros((3, 3, 3))
    c[0, 1, 2] = Fraction(1)
    c[1, 0, 2] = Fraction(1)  # should be -1 for even-even
    with pytest.raises(SkewViolation):
        from liesuper import LieSuperalgebra

        LieSuperalgebra(QQ, ["a", "b", "c"], [], c)


def test_jacobi_violation_reported():
    # [a,b] = b, [a,c] = b, [b,c] = a fails Jacobi
    with pytest.raises(JacobiViolation) as e:
        validate(QQ, ["a", "b", "c"], [], {("a", "b"): {"b": 1}, ("a", "c"): {"b": 1}, ("b", "c"): {"a": 1}})
    assert len(e.value.indices) == 3


def test_no_ungraded_antisymmetry_on_odd_diagonal():
    # [y, y] = x must be accepted; ungraded antisymmetry would force it to 0
    validate(QQ, ["x"], ["y"], {("y", "y"): {"x": 1}})


def test_bracket_examples():
    L = hev()
    u = L.vector({"x1": 1, "x2": 1})
    v = L.vector({"x1": 1, "x2": -1})
    assert list(L.bracket(u, v)) == [0, 0, -2]


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError):
        hev().bracket(QQ.zeros(2), QQ.zeros(3))


@pytest.mark.parametrize("field", [QQ, F5])
def test_center_and_derived_examples(field):
    A = abelian(2, 1, field)
    assert A.center == A.full_space()
    assert A.derived.is_zero()
    for L, label in ((hodd(field), "x"), (hev(field), "z")):
        target = L.subspace([L.vector({label: 1})])
        assert L.center == target
        assert L.derived == target


def test_center_matches_brute_force():
    for field in (QQ, F5):
        for L in catalog(field):
            assert tuple(L.center.dim) == oracles.brute_center_dim(L)


def test_centralizer_examples():
    L = hodd()
    assert centralizer(L, L.zero_space()) == L.full_space()
    assert centralizer(L, L.subspace([L.vector({"y": 1})])) == L.subspace([L.vector({"x": 1})])
    for M in catalog(QQ):
        assert centralizer(M, M.full_space()) == M.center


def test_ideal_examples():
    L = hodd()
    assert is_graded_ideal(L, L.zero_space()) and is_graded_ideal(L, L.full_space())
    assert not is_graded_ideal(L, L.subspace([L.vector({"y": 1})]))
    for M in catalog(QQ):
        assert is_graded_ideal(M, M.center)
        assert is_graded_ideal(M, M.derived)


def test_quotient_examples():
    L = hodd(F5)
    q0 = quotient(L, L.zero_space())
    assert find_isomorphism(q0.algebra, L) is not None
    q = quotient(L, L.center)
    assert q.algebra.same_constants(abelian(0, 1, F5))
    assert q.projection.kernel() == L.center
    H = hev(F5)
    assert quotient(H, H.center).algebra.same_constants(abelian(2, 0, F5))
    with pytest.raises(NotAnIdeal):
        quotient(L, L.subspace([L.vector({"y": 1})]))


def test_direct_sum_examples():
    S = direct_sum(abelian(1, 2), abelian(2, 1))
    assert S.dim == GradedDim(3, 3) and S.is_abelian
    L = by_name("Hodd+A(1|0)")
    assert L.derived.dim == GradedDim(1, 0)
    # Z(L + A) = Z(L) + A
    assert L.center.dim == GradedDim(2, 0)
    with pytest.raises(Exception):
        direct_sum(hodd(QQ), hodd(F5))


def test_generators_examples():
    for m in range(3):
        for n in range(3):
            g = minimal_homogeneous_generators(abelian(m, n))
            assert (g.even, g.odd) == (m, n)
    g = minimal_homogeneous_generators(hodd())
    assert (g.even, g.odd) == (0, 1) and g.certified
    g = minimal_homogeneous_generators(hev())
    assert (g.even, g.odd) == (2, 0)
    assert generates_algebra(hodd(), [hodd().vector({"y": 1})])
    assert not generates_algebra(hev(), [hev().vector({"x1": 1, "x2": 1})])


def test_generator_cap():
    with pytest.raises(SearchCapExceeded):
        minimal_homogeneous_generators(abelian(5, 4), cap=8)


def test_homomorphism_examples():
    L = hodd()
    ident = Homomorphism.identity(L)
    assert ident.kernel().is_zero() and ident.image() == L.full_space() and ident.is_isomorphism()
    q = quotient(L, L.center)
    assert q.projection.kernel() == L.center
    A = abelian(1, 1)
    z = Homomorphism.zero(A, A)
    assert z.kernel() == A.full_space() and z.image().is_zero()
    for M in catalog(QQ):
        assert is_graded_ideal(M, Homomorphism.identity(M).kernel())


def test_non_homomorphism_rejected():
    L = hodd()
    with pytest.raises(ValueError):
        Homomorphism(L, L, QQ.array([[1, 0], [0, 2]]))


def test_lower_central_series_of_heisenberg():
    dims = [s.dim for s in lower_central_series(hev())]
    assert dims == [GradedDim(3, 0), GradedDim(1, 0), GradedDim(0, 0)]


def test_purely_even_agrees_with_lie_algebra_center():
    # sl2 over Q: e, f, h with [e,f]=h, [h,e]=2e, [h,f]=-2f; center 0, derived everything
    sl2 = validate(QQ, ["e", "f", "h"], [], {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}})
    assert sl2.center.is_zero()
    assert sl2.derived == sl2.full_space()
