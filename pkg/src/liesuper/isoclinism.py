"""Isoclinism of Lie superalgebras.

An isoclinism ``L ~ K`` is a pair of isomorphisms ``alpha: L/Z(L) -> K/Z(K)``
and ``beta: L' -> K'`` with ``beta([l, m]) = [k, r]`` whenever ``k`` and ``r``
represent ``alpha(l + Z(L))`` and ``alpha(m + Z(L))``.

Coordinates: ``alpha`` acts on coordinates of the central quotient (basis =
the deterministic coset representatives), ``beta`` on coordinates w.r.t. the
echelon basis of the derived subalgebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import _kernels
from .algebra import (
    LieSuperalgebra,
    NotASubalgebra,
    NotAnIdeal,
    SearchCapExceeded,
    first_bracket_defect,
    generated_subalgebra,
    is_graded_ideal,
    is_subalgebra,
    lower_central_series,
    minimal_homogeneous_generators,
    GeneratorSearch,
    Homomorphism,
    direct_sum_data,
    quotient,
    subalgebra,
)
from .fields import FieldError
from .linalg import (
    GradedDim,
    GradedLinearMap,
    GradedSubspace,
    complement,
    coordinates,
    inverse,
    matmul,
    solve,
)
from .search import FieldNotFinite, block_vectors


class ShapeMismatch(ValueError):
    pass


class NotIsoclinicError(ValueError):
    pass


@dataclass(frozen=True)
class SearchCaps:
    """Limits of the exhaustive searches (configuration, not hard limits of the method)."""

    max_quotient_dim: int = 4
    max_derived_dim: int = 4
    max_prime: int = 7
    max_generator_dim: int = 8
    max_nodes: int = 5_000_000


DEFAULT_CAPS = SearchCaps()


# ---------------------------------------------------------------------------
# commutator map
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CommutatorMap:
    """``phi: L/Z(L) x L/Z(L) -> L'``, ``(l + Z, m + Z) -> [l, m]``."""

    algebra: LieSuperalgebra
    center: GradedSubspace
    derived: GradedSubspace
    quotient: LieSuperalgebra
    projection: np.ndarray  # L -> L/Z(L) coordinates
    section: np.ndarray  # rows: representatives of the quotient basis in L
    derived_algebra: LieSuperalgebra
    table: np.ndarray  # (q, q, d): derived-basis coordinates of [rep_a, rep_b]

    def __call__(self, u, v) -> np.ndarray:
        f = self.algebra.field
        if self.table.size == 0:
            return f.zeros(self.derived.dim.total)
        return f.reduce(np.einsum("a,b,abk->k", np.asarray(u), np.asarray(v), self.table))

    def lift(self, u) -> np.ndarray:
        return matmul(np.asarray(u).reshape(1, -1), self.section, self.algebra.field)[0]

    def derived_coordinates(self, w) -> np.ndarray:
        return coordinates(self.derived.basis, np.asarray(w).reshape(1, -1), self.algebra.field)[0]


def commutator_map(L: LieSuperalgebra) -> CommutatorMap:
    cached = L.__dict__.get("_commutator_map")
    if cached is not None:
        return cached
    f = L.field
    Z = L.center
    D = L.derived
    q = quotient(L, Z)
    Q = q.algebra
    reps = q.section
    d = D.dim.total
    table = f.zeros((Q.n, Q.n, d))
    for a in range(Q.n):
        for b in range(Q.n):
            w = L.bracket(reps[a], reps[b])
            if np.any(w != 0):
                table[a, b] = coordinates(D.basis, w, f)[0]
    # representative independence: shifting by a central element changes nothing
    for z in Z.basis:
        for a in range(Q.n):
            if np.any(L.bracket(z, reps[a]) != 0):
                raise RuntimeError("center computation is inconsistent")
    cm = CommutatorMap(
        L, Z, D, Q, q.projection.matrix, reps, subalgebra(L, D), table
    )
    L.__dict__["_commutator_map"] = cm
    return cm


# ---------------------------------------------------------------------------
# pairs and verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IsoclinismPair:
    source: LieSuperalgebra
    target: LieSuperalgebra
    alpha: GradedLinearMap  # L/Z(L) -> K/Z(K)
    beta: GradedLinearMap  # L' -> K'

    def inverse(self) -> "IsoclinismPair":
        return IsoclinismPair(self.target, self.source, self.alpha.inverse(), self.beta.inverse())

    def then(self, other: "IsoclinismPair") -> "IsoclinismPair":
        """Composite ``other o self`` (self: L -> K, other: K -> M)."""
        if not self.target.same_constants(other.source):
            raise ShapeMismatch("pairs do not compose: middle algebras differ")
        return IsoclinismPair(
            self.source, other.target, other.alpha.compose(self.alpha), other.beta.compose(self.beta)
        )


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    counterexample: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def identity_pair(L: LieSuperalgebra) -> IsoclinismPair:
    cm = commutator_map(L)
    return IsoclinismPair(
        L, L, GradedLinearMap.identity(L.field, cm.quotient.dim), GradedLinearMap.identity(L.field, cm.derived.dim)
    )


def make_pair(L: LieSuperalgebra, K: LieSuperalgebra, alpha, beta) -> IsoclinismPair:
    """Wrap raw matrices (codomain x domain) into an :class:`IsoclinismPair`."""
    cL, cK = commutator_map(L), commutator_map(K)
    f = L.field

    def wrap(m, dom: GradedDim, cod: GradedDim, what: str) -> GradedLinearMap:
        if isinstance(m, GradedLinearMap):
            return m
        a = f.array(m)
        if a.size != dom.total * cod.total:
            raise ShapeMismatch(f"{what} must be a {cod.total}x{dom.total} matrix ({dom} -> {cod})")
        return GradedLinearMap(f, dom, cod, a.reshape(cod.total, dom.total))

    a = wrap(alpha, cL.quotient.dim, cK.quotient.dim, "alpha")
    b = wrap(beta, cL.derived.dim, cK.derived.dim, "beta")
    return IsoclinismPair(L, K, a, b)


def verify_homoclinism(pair: IsoclinismPair, require_bijective: bool = False) -> Verdict:
    """Check that alpha, beta are homomorphisms and the commutator square commutes."""
    L, K = pair.source, pair.target
    if L.field != K.field:
        raise FieldError("pair between algebras over different fields")
    cL, cK = commutator_map(L), commutator_map(K)
    if pair.alpha.domain != cL.quotient.dim or pair.alpha.codomain != cK.quotient.dim:
        raise ShapeMismatch(
            f"alpha must map {cL.quotient.dim} -> {cK.quotient.dim}, got {pair.alpha.domain} -> {pair.alpha.codomain}"
        )
    if pair.beta.domain != cL.derived.dim or pair.beta.codomain != cK.derived.dim:
        raise ShapeMismatch(
            f"beta must map {cL.derived.dim} -> {cK.derived.dim}, got {pair.beta.domain} -> {pair.beta.codomain}"
        )
    A = pair.alpha.matrix
    B = pair.beta.matrix
    bad = first_bracket_defect(cL.quotient, cK.quotient, A)
    if bad is not None:
        return Verdict(False, "alpha is not a homomorphism of central quotients", bad)
    bad = first_bracket_defect(cL.derived_algebra, cK.derived_algebra, B)
    if bad is not None:
        return Verdict(False, "beta is not a homomorphism of derived subalgebras", bad)
    f = L.field
    q = cL.quotient.n
    for a in range(q):
        for b in range(q):
            lhs = matmul(B, cL.table[a, b], f) if B.size else f.zeros(cK.derived.dim.total)
            rhs = cK(A[:, a], A[:, b])
            if np.any(lhs != rhs):
                return Verdict(False, "commutator square does not commute", (a, b))
    if require_bijective:
        if not pair.alpha.is_bijective():
            return Verdict(False, "alpha is not bijective")
        if not pair.beta.is_bijective():
            return Verdict(False, "beta is not bijective")
    return Verdict(True, "isoclinism" if require_bijective else "homoclinism")


def verify_isoclinism(pair: IsoclinismPair) -> Verdict:
    return verify_homoclinism(pair, require_bijective=True)


def induced_pair(L: LieSuperalgebra, K: LieSuperalgebra, M: np.ndarray) -> IsoclinismPair:
    """Pair induced by a linear map ``M: L -> K`` (matrix K.n x L.n) with ``M(L') <= K'``.

    ``alpha = pi_K o M o section_L`` and ``beta = M`` restricted to ``L'``.
    Nothing is assumed about well-definedness; verify the result.
    """
    f = L.field
    cL, cK = commutator_map(L), commutator_map(K)
    M = np.asarray(M, dtype=f.dtype).reshape(K.n, L.n)
    reps_img = matmul(M, cL.section.T, f) if L.n else f.zeros((K.n, 0))
    alpha = matmul(cK.projection, reps_img, f) if K.n else f.zeros((0, cL.quotient.n))
    D = cL.derived.basis
    dK = cK.derived.dim.total
    if D.shape[0]:
        img = matmul(M, D.T, f).T
        beta = coordinates(cK.derived.basis, img, f).T if dK else f.zeros((0, D.shape[0]))
    else:
        beta = f.zeros((dK, 0))
    alpha = alpha.reshape(cK.quotient.n, cL.quotient.n)
    beta = np.asarray(beta, dtype=f.dtype).reshape(dK, D.shape[0])
    return IsoclinismPair(
        L,
        K,
        GradedLinearMap(f, cL.quotient.dim, cK.quotient.dim, alpha),
        GradedLinearMap(f, cL.derived.dim, cK.derived.dim, beta),
    )


# ---------------------------------------------------------------------------
# fingerprint
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsoclinismFingerprint:
    """Dimension data; only the fields in ``INVARIANTS`` are compared.

    ``algebra`` and ``center`` change under ``L -> L + A`` and are informational.
    """

    algebra: GradedDim
    center: GradedDim
    derived: GradedDim
    center_meet_derived: GradedDim
    central_quotient: GradedDim
    quotient_lcs: tuple[GradedDim, ...]
    derived_lcs: tuple[GradedDim, ...]

    INVARIANTS = ("derived", "central_quotient", "center_meet_derived", "quotient_lcs", "derived_lcs")

    def mismatch(self, other: "IsoclinismFingerprint") -> str | None:
        for name in self.INVARIANTS:
            a, b = getattr(self, name), getattr(other, name)
            if a != b:
                fmt = (lambda x: "[" + ",".join(map(str, x)) + "]") if isinstance(a, tuple) else str
                return f"{name}: {fmt(a)} vs {fmt(b)}"
        return None

    def to_json(self) -> dict:
        out = {}
        for k in ("algebra", "center", "derived", "center_meet_derived", "central_quotient"):
            out[k] = getattr(self, k).to_json()
        out["quotient_lcs"] = [d.to_json() for d in self.quotient_lcs]
        out["derived_lcs"] = [d.to_json() for d in self.derived_lcs]
        return out


def fingerprint(L: LieSuperalgebra) -> IsoclinismFingerprint:
    cm = commutator_map(L)
    return IsoclinismFingerprint(
        algebra=L.dim,
        center=cm.center.dim,
        derived=cm.derived.dim,
        center_meet_derived=(cm.center & cm.derived).dim,
        central_quotient=cm.quotient.dim,
        quotient_lcs=tuple(s.dim for s in lower_central_series(cm.quotient)),
        derived_lcs=tuple(s.dim for s in lower_central_series(cm.derived_algebra)),
    )


# ---------------------------------------------------------------------------
# constructive isoclinisms
# ---------------------------------------------------------------------------


def isoclinism_with_direct_sum(L: LieSuperalgebra, A: LieSuperalgebra) -> IsoclinismPair:
    """``L ~ L + A`` for abelian A: alpha is induced by the inclusion, beta is the identity on L'."""
    if not A.is_abelian:
        raise ValueError("second summand must be abelian")
    ds = direct_sum_data(L, A)
    f = L.field
    M = f.zeros((ds.algebra.n, L.n))
    for i, j in enumerate(ds.left_index):
        M[j, i] = f.one
    return induced_pair(L, ds.algebra, M)


@dataclass(frozen=True, eq=False)
class SubalgebraIsoclinism:
    subalgebra: LieSuperalgebra  # H
    enlarged: LieSuperalgebra  # H + Z(L)
    pair: IsoclinismPair  # H ~ H + Z(L)
    fills_algebra: bool  # H + Z(L) == L
    pair_with_algebra: IsoclinismPair | None  # H ~ L when fills_algebra


def isoclinism_subalgebra_plus_center(L: LieSuperalgebra, H: GradedSubspace) -> SubalgebraIsoclinism:
    if not is_subalgebra(L, H):
        raise NotASubalgebra("H is not closed under the bracket")
    f = L.field
    HZ = H + L.center
    Halg = subalgebra(L, H)
    HZalg = subalgebra(L, HZ)
    incl = coordinates(HZ.basis, H.basis, f).T if H.dim.total else f.zeros((HZ.dim.total, 0))
    pair = induced_pair(Halg, HZalg, incl)
    fills = HZ == L.full_space()
    direct = induced_pair(Halg, L, H.basis.T if H.dim.total else f.zeros((L.n, 0))) if fills else None
    return SubalgebraIsoclinism(Halg, HZalg, pair, fills, direct)


@dataclass(frozen=True, eq=False)
class QuotientIsoclinism:
    by_ideal: LieSuperalgebra  # L / I
    by_meet: LieSuperalgebra  # L / (I & L')
    pair: IsoclinismPair  # L/I ~ L/(I & L')
    meet_is_zero: bool
    pair_with_algebra: IsoclinismPair | None  # L ~ L/I when I & L' = 0


def isoclinism_quotient(L: LieSuperalgebra, I: GradedSubspace) -> QuotientIsoclinism:
    if not is_graded_ideal(L, I):
        raise NotAnIdeal("I is not a graded ideal")
    f = L.field
    J = I & L.derived
    bar = quotient(L, I)
    til = quotient(L, J)
    # natural surjection L/J -> L/I, inverted to go L/I -> L/J
    nat = matmul(bar.projection.matrix, til.section.T, f) if til.algebra.n else f.zeros((bar.algebra.n, 0))
    pair = induced_pair(til.algebra, bar.algebra, nat).inverse()
    zero = J.is_zero()
    direct = induced_pair(L, bar.algebra, bar.projection.matrix) if zero else None
    return QuotientIsoclinism(bar.algebra, til.algebra, pair, zero, direct)


@dataclass(frozen=True, eq=False)
class EpimorphismTest:
    isoclinic: bool
    kernel_meet_derived: GradedSubspace
    pair: IsoclinismPair | None
    verdict: Verdict | None


def epimorphism_isoclinism_test(f: Homomorphism) -> EpimorphismTest:
    """A surjection induces an isoclinism iff its kernel meets L' trivially."""
    if not f.is_surjective():
        raise ValueError("homomorphism is not surjective")
    meet = f.kernel() & f.source.derived
    if not meet.is_zero():
        return EpimorphismTest(False, meet, None, None)
    pair = induced_pair(f.source, f.target, f.matrix)
    verdict = verify_isoclinism(pair)
    if not verdict:
        raise RuntimeError(f"induced pair failed verification: {verdict.reason}")
    return EpimorphismTest(True, meet, pair, verdict)


# ---------------------------------------------------------------------------
# stem algebras
# ---------------------------------------------------------------------------


def is_stem(L: LieSuperalgebra) -> bool:
    return L.center <= L.derived


@dataclass(frozen=True, eq=False)
class StemReduction:
    stem: LieSuperalgebra  # T = L / S
    witness: IsoclinismPair  # L ~ T
    killed: GradedSubspace  # S
    projection: Homomorphism


def stem_reduce(L: LieSuperalgebra) -> StemReduction:
    """Quotient by the deterministic complement S of ``Z(L) & L'`` inside ``Z(L)``."""
    Z = L.center
    S = complement(Z & L.derived, Z)
    q = quotient(L, S, name=f"stem({L.name})" if L.name else None)
    pair = induced_pair(L, q.algebra, q.projection.matrix)
    return StemReduction(q.algebra, pair, S, q.projection)


@dataclass(frozen=True)
class MinimalityRow:
    member: str
    dim: GradedDim
    stem_le_member: bool


@dataclass(frozen=True)
class MinimalityReport:
    stem_dim: GradedDim
    is_stem: bool
    rows: tuple[MinimalityRow, ...]

    @property
    def minimal(self) -> bool:
        return all(r.stem_le_member for r in self.rows)

    @property
    def consistent(self) -> bool:
        """A stem member must be componentwise minimal in its class."""
        return self.minimal or not self.is_stem


def minimality_check(
    T: LieSuperalgebra,
    family: Sequence[LieSuperalgebra],
    witnesses: Sequence[IsoclinismPair | None] | None = None,
    caps: SearchCaps = DEFAULT_CAPS,
) -> MinimalityReport:
    rows = []
    for idx, member in enumerate(family):
        w = witnesses[idx] if witnesses is not None else None
        if w is not None:
            if not verify_isoclinism(w):
                raise NotIsoclinicError(f"supplied witness for member {idx} is not an isoclinism")
        else:
            dec = decide_isoclinic(T, member, caps=caps)
            if dec.verdict != "isoclinic":
                raise NotIsoclinicError(f"member {idx} ({member.name}) is not isoclinic to T: {dec.reason}")
        rows.append(MinimalityRow(member.name or f"#{idx}", member.dim, T.dim <= member.dim))
    return MinimalityReport(T.dim, is_stem(T), tuple(rows))


@dataclass(frozen=True, eq=False)
class SchurBound:
    lhs: int  # dim L/Z(L)
    rhs: int  # (m + n) dim L'
    holds: bool
    generators: GeneratorSearch
    derived_dim: int


def converse_schur_bound(L: LieSuperalgebra, cap: int = DEFAULT_CAPS.max_generator_dim) -> SchurBound:
    """``dim L/Z(L) <= (m+n) dim L'`` with m+n the minimal homogeneous generator count of L/Z(L)."""
    cm = commutator_map(L)
    gens = minimal_homogeneous_generators(cm.quotient, cap=cap)
    lhs = cm.quotient.n
    d = cm.derived.dim.total
    rhs = gens.total * d
    return SchurBound(lhs, rhs, lhs <= rhs, gens, d)


# ---------------------------------------------------------------------------
# decision
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IsoclinismDecision:
    verdict: str  # "isoclinic" | "not-isoclinic" | "inconclusive"
    pair: IsoclinismPair | None = None
    reason: str = ""
    method: str = ""
    nodes: int = 0

    @property
    def isoclinic(self) -> bool:
        return self.verdict == "isoclinic"


def _constructive_witness(L: LieSuperalgebra, K: LieSuperalgebra) -> IsoclinismPair | None:
    if L.same_constants(K):
        ident = identity_pair(L)
        return IsoclinismPair(L, K, ident.alpha, ident.beta)
    rL, rK = stem_reduce(L), stem_reduce(K)
    if rL.stem.same_constants(rK.stem):
        ident = identity_pair(rL.stem)
        mid = IsoclinismPair(rL.stem, rK.stem, ident.alpha, ident.beta)
        return rL.witness.then(mid).then(rK.witness.inverse())
    return None


def decide_isoclinic(
    L: LieSuperalgebra,
    K: LieSuperalgebra,
    exhaustive: bool | None = None,
    caps: SearchCaps = DEFAULT_CAPS,
) -> IsoclinismDecision:
    """Decide ``L ~ K``.

    Fingerprint mismatch refutes immediately. In exhaustive mode (default over
    GF(p)) every degree-zero invertible alpha on the central quotients is
    enumerated; beta is forced on the spanning brackets and only checked for
    well-definedness and bijectivity. Without exhaustive search only
    constructive witnesses are tried and the answer may be ``inconclusive``.
    """
    if L.field != K.field:
        raise FieldError("algebras over different fields")
    if exhaustive is None:
        exhaustive = L.field.is_finite
    fL, fK = fingerprint(L), fingerprint(K)
    diff = fL.mismatch(fK)
    if diff is not None:
        return IsoclinismDecision("not-isoclinic", None, f"fingerprint differs: {diff}", "fingerprint")
    if not exhaustive:
        w = _constructive_witness(L, K)
        if w is not None and verify_isoclinism(w):
            return IsoclinismDecision("isoclinic", w, "constructive witness", "constructive")
        return IsoclinismDecision("inconclusive", None, "no constructive witness; exhaustive search not run", "constructive")
    if not L.field.is_finite:
        raise FieldNotFinite("exhaustive isoclinism search needs GF(p)")
    if L.field.p > caps.max_prime:
        raise SearchCapExceeded(f"prime {L.field.p} exceeds cap {caps.max_prime}")
    if fL.central_quotient.total > caps.max_quotient_dim:
        raise SearchCapExceeded(
            f"central quotient dimension {fL.central_quotient.total} exceeds cap {caps.max_quotient_dim}"
        )
    if fL.derived.total > caps.max_derived_dim:
        raise SearchCapExceeded(f"derived dimension {fL.derived.total} exceeds cap {caps.max_derived_dim}")
    pair, nodes = _alpha_search(commutator_map(L), commutator_map(K), caps.max_nodes)
    if pair is None:
        return IsoclinismDecision("not-isoclinic", None, "SearchExhausted", "exhaustive", nodes)
    return IsoclinismDecision("isoclinic", pair, "exhaustive search witness", "exhaustive", nodes)


def _alpha_search(cL: CommutatorMap, cK: CommutatorMap, max_nodes: int):
    """Depth-first over the columns of alpha; returns (first verified pair, nodes)."""
    L, K = cL.algebra, cK.algebra
    f = L.field
    p = f.p
    QL, QK = cL.quotient, cK.quotient
    q = QL.n
    dL, dK = cL.derived.dim.total, cK.derived.dim.total
    TL = np.asarray(cL.table, dtype=np.int64).reshape(q, q, dL)
    TK = np.asarray(cK.table, dtype=np.int64).reshape(q, q, dK)
    cs = np.asarray(QL.constants, dtype=np.int64)
    ct = np.asarray(QK.constants, dtype=np.int64)
    par = QL.parities

    # alpha-hom conditions become checkable once all involved columns are fixed
    ready = [[] for _ in range(q)]
    for s in range(q):
        for t in range(q):
            lvl = max([s, t] + [int(k) for k in np.nonzero(cs[s, t])[0]])
            ready[lvl].append((s, t))
    ready = [np.array(r, dtype=np.int64).reshape(-1, 2) for r in ready]

    cands = []
    for i in range(q):
        off = 0 if par[i] == 0 else QK.dim.even
        width = QK.dim.even if par[i] == 0 else QK.dim.odd
        cands.append(block_vectors(q, off, width, p, nonzero=True, first=i - off))

    A = np.zeros((q, q), dtype=np.int64)
    nodes = [0]

    def phi_rows(i):
        return np.array([TL[s, t] for s in range(i + 1) for t in range(i + 1)], dtype=np.int64).reshape(-1, dL)

    def psi_rows_batch(i, C):
        # rows for all pairs (s, t) with s, t <= i, column i taken from each candidate
        N = C.shape[0]
        cols = np.repeat(A[None, :, : i + 1], N, axis=0)
        cols[:, :, i] = C
        # psi(u, v) = sum_ab u_a v_b TK[a, b]
        out = np.einsum("nas,nbt,abk->nstk", cols, cols, TK) % p
        return out.reshape(N, (i + 1) * (i + 1), dK)

    def finish():
        alpha = A.copy()
        Phi = phi_rows(q - 1)
        Psi = np.array(
            [np.einsum("a,b,abk->k", alpha[:, s], alpha[:, t], TK) % p for s in range(q) for t in range(q)],
            dtype=np.int64,
        ).reshape(-1, dK)
        beta = np.zeros((dK, dL), dtype=np.int64)
        for j in range(dL):
            e = np.zeros(dL, dtype=np.int64)
            e[j] = 1
            x = solve(Phi, e, f)
            if x is None:
                return None
            beta[:, j] = (np.asarray(x, dtype=np.int64) @ Psi) % p if Psi.size else 0
        pair = IsoclinismPair(
            L,
            K,
            GradedLinearMap(f, QL.dim, QK.dim, alpha),
            GradedLinearMap(f, cL.derived.dim, cK.derived.dim, beta),
        )
        return pair if verify_isoclinism(pair) else None

    def rec(i):
        if i == q:
            return finish()
        C = cands[i]
        N = C.shape[0]
        nodes[0] += N
        if nodes[0] > max_nodes:
            raise SearchCapExceeded(f"isoclinism search exceeded {max_nodes} candidate columns")
        maps = np.repeat(A[None], N, axis=0)
        maps[:, :, i] = C
        mask = _kernels.batch_hom_mask(cs, ct, maps, ready[i], p)
        same = [j for j in range(i) if par[j] == par[i]]
        if mask.any():
            stack = np.concatenate([np.repeat(A[:, same].T[None], N, axis=0), C[:, None, :]], axis=1)
            mask &= _kernels.batch_rank_mod_p(stack, p) == len(same) + 1
        if mask.any() and dL + dK > 0:
            idx = np.nonzero(mask)[0]
            Phi = phi_rows(i)
            Psi = psi_rows_batch(i, C[idx])
            rphi = int(_kernels.batch_rank_mod_p(Phi[None], p)[0]) if Phi.size else 0
            both = np.concatenate([np.repeat(Phi[None], len(idx), axis=0), Psi], axis=2)
            rboth = _kernels.batch_rank_mod_p(both, p)
            rpsi = _kernels.batch_rank_mod_p(Psi, p) if dK else np.zeros(len(idx), dtype=np.int64)
            ok = (rboth == rphi) & (rpsi == rboth)
            mask[idx] = ok
        for idx in np.nonzero(mask)[0]:
            A[:, i] = C[idx]
            found = rec(i + 1)
            if found is not None:
                return found
        A[:, i] = 0
        return None

    if q == 0:
        # both central quotients vanish: both algebras abelian
        pair = IsoclinismPair(
            L,
            K,
            GradedLinearMap(f, QL.dim, QK.dim, f.zeros((0, 0))),
            GradedLinearMap(f, cL.derived.dim, cK.derived.dim, f.zeros((dK, dL))),
        )
        return (pair if verify_isoclinism(pair) else None), 0
    return rec(0), nodes[0]


# ---------------------------------------------------------------------------
# desk-scale enumeration helpers (GF(p))
# ---------------------------------------------------------------------------


def enumerate_graded_subspaces(L: LieSuperalgebra):
    """Every graded subspace of L over GF(p): products of per-parity subspaces."""
    from .linalg import enumerate_subspaces

    f = L.field
    if not f.is_finite:
        raise FieldNotFinite("subspace enumeration needs GF(p)")
    me, mo = L.dim.even, L.dim.odd
    odd_list = list(enumerate_subspaces(f, mo))
    for E in enumerate_subspaces(f, me):
        for O in odd_list:
            ev = np.zeros((E.shape[0], L.n), dtype=np.int64)
            ev[:, :me] = E
            od = np.zeros((O.shape[0], L.n), dtype=np.int64)
            od[:, me:] = O
            yield GradedSubspace(f, L.dim, ev, od)


def enumerate_subalgebras(L: LieSuperalgebra):
    for S in enumerate_graded_subspaces(L):
        if is_subalgebra(L, S):
            yield S


def enumerate_ideals(L: LieSuperalgebra):
    for S in enumerate_graded_subspaces(L):
        if is_graded_ideal(L, S):
            yield S
