"""Lie superalgebras given by graded structure constants.

The basis is homogeneous with the even block first. ``constants[i, j, k]`` is
the coefficient of ``b_k`` in ``[b_i, b_j]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .fields import Field, FieldError
from .linalg import (
    GradedDim,
    GradedLinearMap,
    GradedSubspace,
    coordinates,
    matmul,
    quotient_structure,
    solve_kernel,
)

DEFAULT_GENERATOR_CAP = 8


class AxiomViolation(ValueError):
    """Structure constants that fail one of the Lie superalgebra axioms."""

    axiom = "axiom"

    def __init__(self, indices: tuple[int, ...], names: Sequence[str] | None = None, detail: str = ""):
        self.indices = tuple(int(i) for i in indices)
        self.labels = tuple(names[i] for i in self.indices) if names else None
        where = ", ".join(self.labels) if self.labels else ", ".join(map(str, self.indices))
        msg = f"{self.axiom} violated at ({where})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class GradingViolation(AxiomViolation):
    axiom = "grading"


class SkewViolation(AxiomViolation):
    axiom = "graded skew-symmetry"


class JacobiViolation(AxiomViolation):
    axiom = "graded Jacobi identity"


class NotAnIdeal(ValueError):
    pass


class NotASubalgebra(ValueError):
    pass


class NotAHomomorphism(ValueError):
    pass


class SearchCapExceeded(RuntimeError):
    pass


def _sign(a: int, b: int) -> int:
    return -1 if (a & b) else 1


def _integerize(c: np.ndarray) -> np.ndarray:
    """Scale a Fraction array to Python ints (same zero pattern for homogeneous identities)."""
    dens = [x.denominator for x in c.reshape(-1) if x != 0]
    d = lcm(*dens) if dens else 1
    out = np.empty(c.shape, dtype=object)
    flat = out.reshape(-1)
    for idx, x in enumerate(c.reshape(-1)):
        flat[idx] = int(x * d)
    return out


def jacobi_tensor(constants: np.ndarray, parities: np.ndarray, field: Field) -> np.ndarray:
    """``J[i,j,l]`` = graded Jacobi sum for basis triple (i, j, l); zero iff the identity holds.

    Over Q the tensor is computed on an integer rescaling of the constants, so
    only its zero pattern is meaningful.
    """
    c = constants
    if not field.is_finite:
        c = _integerize(c)
    n = c.shape[0]
    if n == 0:
        return field.zeros((0, 0, 0, 0))
    pp = np.outer(parities, parities)
    s = np.where(pp == 1, -1, 1)
    t1 = np.einsum("jlk,ikm->ijlm", c, c)
    t2 = np.einsum("lik,jkm->ijlm", c, c)
    t3 = np.einsum("ijk,lkm->ijlm", c, c)
    # s is symmetric: signs (-1)^{|i||l|}, (-1)^{|j||i|}, (-1)^{|l||j|}
    J = s[:, None, :, None] * t1 + s[:, :, None, None] * t2 + s[None, :, :, None] * t3
    return field.reduce(J) if field.is_finite else J


def check_axioms(field: Field, parities: np.ndarray, constants: np.ndarray, names=None) -> None:
    """Raise the first violated axiom: grading, then skew-symmetry, then Jacobi."""
    n = len(parities)
    c = constants
    nz = np.argwhere(c != 0) if n else np.zeros((0, 3), dtype=int)
    for i, j, k in nz:
        if parities[k] != (parities[i] ^ parities[j]):
            raise GradingViolation((i, j, k), names, "odd*odd and even*even land even, mixed lands odd")
    for i in range(n):
        for j in range(i, n):
            sgn = -_sign(parities[i], parities[j])
            for k in range(n):
                expected = c[i, j, k] * sgn
                if field.is_finite:
                    expected %= field.p
                if c[j, i, k] != expected:
                    raise SkewViolation((i, j, k), names, f"[b{j},b{i}] != -(-1)^(|b{i}||b{j}|)[b{i},b{j}]")
    if n == 0:
        return
    J = jacobi_tensor(c, parities, field)
    bad = np.argwhere(np.any(J != 0, axis=3))
    if len(bad):
        i, j, l = bad[0]
        raise JacobiViolation((i, j, l), names)


class LieSuperalgebra:
    """A finite-dimensional Lie superalgebra over an exact field.

    Instances are immutable. Construction validates all three axioms unless
    ``check=False`` is passed by code that has already established them.
    """

    def __init__(
        self,
        field: Field,
        even_names: Sequence[str],
        odd_names: Sequence[str],
        constants,
        name: str | None = None,
        check: bool = True,
    ):
        self.field = field
        self.even_names = tuple(even_names)
        self.odd_names = tuple(odd_names)
        names = self.even_names + self.odd_names
        if len(set(names)) != len(names):
            raise ValueError(f"basis labels are not distinct: {names}")
        n = len(names)
        self.dim = GradedDim(len(self.even_names), len(self.odd_names))
        if isinstance(constants, np.ndarray) and constants.shape == (n, n, n):
            c = field.check_array(constants) if constants.dtype != field.dtype else constants.copy()
        else:
            c = field.array(constants) if n else field.zeros((0, 0, 0))
            if c.shape != (n, n, n):
                raise ValueError(f"structure constants must have shape {(n, n, n)}, got {c.shape}")
        c = c.reshape(n, n, n)
        c.flags.writeable = False
        self.constants = c
        self.parities = np.array([0] * self.dim.even + [1] * self.dim.odd, dtype=np.int64)
        self.parities.flags.writeable = False
        self.name = name
        if check:
            check_axioms(field, self.parities, c, names)

    @property
    def names(self) -> tuple[str, ...]:
        return self.even_names + self.odd_names

    @property
    def n(self) -> int:
        return self.dim.total

    def parity(self, i: int) -> int:
        return int(self.parities[i])

    def index(self, label: str) -> int:
        return self.names.index(label)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.n)
        v[i] = self.field.one
        return v

    def vector(self, coeffs: Mapping[str, object]) -> np.ndarray:
        v = self.field.zeros(self.n)
        for label, x in coeffs.items():
            v[self.index(label)] = self.field(x)
        return v

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<LieSuperalgebra{tag} {self.dim} over {self.field}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieSuperalgebra):
            return NotImplemented
        return self.names == other.names and self.same_constants(other)

    def __hash__(self):
        return hash((self.field, self.names, self.constants.tobytes() if self.field.is_finite else str(self.constants.tolist())))

    def same_constants(self, other: "LieSuperalgebra") -> bool:
        """Equal field, graded dimension and structure constants (labels ignored)."""
        return (
            self.field == other.field
            and self.dim == other.dim
            and bool(np.all(self.constants == other.constants))
        )

    def renamed(self, even_names=None, odd_names=None, name=None) -> "LieSuperalgebra":
        return LieSuperalgebra(
            self.field,
            even_names or self.even_names,
            odd_names or self.odd_names,
            self.constants,
            name=name if name is not None else self.name,
            check=False,
        )

    # -- bracket ------------------------------------------------------------------

    def bracket(self, u, v) -> np.ndarray:
        u = np.asarray(u)
        v = np.asarray(v)
        if u.shape != (self.n,) or v.shape != (self.n,):
            raise ValueError(f"bracket expects vectors of length {self.n}")
        if self.n == 0:
            return self.field.zeros(0)
        w = np.einsum("i,j,ijk->k", u, v, self.constants)
        return self.field.reduce(w)

    def bracket_basis(self, i: int, j: int) -> np.ndarray:
        return self.constants[i, j]

    @property
    def is_abelian(self) -> bool:
        return not np.any(self.constants != 0)

    def subspace(self, vectors) -> GradedSubspace:
        return GradedSubspace.span(self.field, self.dim, vectors)

    def full_space(self) -> GradedSubspace:
        return GradedSubspace.full(self.field, self.dim)

    def zero_space(self) -> GradedSubspace:
        return GradedSubspace.zero(self.field, self.dim)

    @cached_property
    def center(self) -> GradedSubspace:
        return centralizer(self, self.full_space())

    @cached_property
    def derived(self) -> GradedSubspace:
        return derived_subalgebra(self)


def validate(
    field: Field,
    even_names: Sequence[str],
    odd_names: Sequence[str],
    brackets,
    name: str | None = None,
) -> LieSuperalgebra:
    """Build and validate an algebra from raw bracket data.

    ``brackets`` is either a dense ``(n, n, n)`` table or a mapping
    ``{(i, j): {k: coeff}}`` (indices or labels). Pairs given only once are
    completed by graded skew-symmetry; pairs given in both orders must agree.
    """
    names = tuple(even_names) + tuple(odd_names)
    n = len(names)
    if not isinstance(brackets, Mapping):
        return LieSuperalgebra(field, even_names, odd_names, brackets, name=name)
    par = [0] * len(even_names) + [1] * len(odd_names)

    def idx(x):
        if isinstance(x, str):
            if x not in names:
                raise ValueError(f"unknown basis label {x!r}")
            return names.index(x)
        i = int(x)
        if not 0 <= i < n:
            raise ValueError(f"basis index {i} out of range")
        return i

    c = field.zeros((n, n, n))
    given = set()
    for (a, b), terms in brackets.items():
        i, j = idx(a), idx(b)
        given.add((i, j))
        for k, coeff in terms.items():
            c[i, j, idx(k)] = field(coeff)
    # grading is checked before completion so the reported triple is the one supplied
    for i, j in sorted(given):
        for k in range(n):
            if c[i, j, k] != 0 and par[k] != par[i] ^ par[j]:
                raise GradingViolation((i, j, k), names)
    for i, j in sorted(given):
        if (j, i) in given and i != j:
            continue
        sgn = -_sign(par[i], par[j])
        for k in range(n):
            val = c[i, j, k] * sgn
            if field.is_finite:
                val %= field.p
            if i == j:
                if c[i, i, k] != val:
                    raise SkewViolation((i, i, k), names, "[x,x] must vanish for even x")
            else:
                c[j, i, k] = val
    return LieSuperalgebra(field, even_names, odd_names, c, name=name)


def zero_algebra(field: Field) -> LieSuperalgebra:
    return LieSuperalgebra(field, (), (), field.zeros((0, 0, 0)), name="0")


# ---------------------------------------------------------------------------
# subspaces attached to an algebra
# ---------------------------------------------------------------------------


def centralizer(L: LieSuperalgebra, S: GradedSubspace) -> GradedSubspace:
    """``{z : [z, s] = 0 for every s in S}``; graded because the bracket is."""
    f = L.field
    if S.host != L.dim:
        raise ValueError("subspace does not live in this algebra")
    svecs = S.basis
    parts = []
    for parity in (0, 1):
        cols = list(L.dim.block(parity))
        if not cols:
            parts.append(f.zeros((0, L.n)))
            continue
        if svecs.shape[0] == 0 or L.n == 0:
            eq = f.zeros((0, len(cols)))
        else:
            # row (s, k), column i: sum_j s_j c[i, j, k]
            ad = np.einsum("sj,ijk->ski", svecs, L.constants[cols])
            eq = f.reduce(ad.reshape(-1, len(cols)))
        K = solve_kernel(eq, f, len(cols))
        full = f.zeros((K.shape[0], L.n))
        full[:, cols] = K
        parts.append(full)
    return GradedSubspace(f, L.dim, parts[0], parts[1])


def center(L: LieSuperalgebra) -> GradedSubspace:
    return L.center


def derived_subalgebra(L: LieSuperalgebra) -> GradedSubspace:
    if L.n == 0:
        return L.zero_space()
    rows = L.constants.reshape(-1, L.n)
    rows = rows[np.any(rows != 0, axis=1)]
    return GradedSubspace.span(L.field, L.dim, list(rows))


def bracket_spaces(L: LieSuperalgebra, U: GradedSubspace, W: GradedSubspace) -> GradedSubspace:
    """``[U, W]`` as a graded subspace."""
    vecs = [L.bracket(u, w) for u in U.basis for w in W.basis]
    vecs = [v for v in vecs if np.any(v != 0)]
    return L.subspace(vecs)


def is_graded_ideal(L: LieSuperalgebra, I: GradedSubspace) -> bool:
    return bracket_spaces(L, I, L.full_space()) <= I


def is_subalgebra(L: LieSuperalgebra, S: GradedSubspace) -> bool:
    return bracket_spaces(L, S, S) <= S


def lower_central_series(L: LieSuperalgebra) -> list[GradedSubspace]:
    series = [L.full_space()]
    while True:
        nxt = bracket_spaces(L, series[-1], L.full_space())
        if nxt == series[-1]:
            return series
        series.append(nxt)


def combination_label(vec, names: Sequence[str], field: Field) -> str:
    """Human-readable label for a coordinate vector, e.g. ``x1-2*x2``."""
    terms = []
    for c, name in zip(vec, names):
        if c == 0:
            continue
        if field.is_finite:
            s = "" if c == 1 else f"{c}*"
            terms.append(("+" if terms else "") + s + name)
        else:
            c = Fraction(c)
            if c == 1:
                s = "+" if terms else ""
            elif c == -1:
                s = "-"
            else:
                s = ("+" if terms and c > 0 else "") + f"{c}*"
            terms.append(s + name)
    return "".join(terms) or "0"


def _unique(labels: list[str]) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for lab in labels:
        if lab in seen:
            seen[lab] += 1
            lab = f"{lab}#{seen[lab]}"
        seen.setdefault(lab, 0)
        out.append(lab)
    return out


def subalgebra(L: LieSuperalgebra, S: GradedSubspace, name: str | None = None) -> LieSuperalgebra:
    """The algebra structure on S (basis: S's echelon basis, even first)."""
    if not is_subalgebra(L, S):
        raise NotASubalgebra("subspace is not closed under the bracket")
    B = S.basis
    m = B.shape[0]
    f = L.field
    c = f.zeros((m, m, m))
    for a in range(m):
        for b in range(m):
            w = L.bracket(B[a], B[b])
            if np.any(w != 0):
                c[a, b] = coordinates(B, w, f)[0]
    labels = _unique([combination_label(v, L.names, f) for v in B])
    d = S.dim
    return LieSuperalgebra(f, labels[: d.even], labels[d.even :], c, name=name, check=False)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------


class Homomorphism:
    """Degree-zero bracket-preserving map ``source -> target``."""

    def __init__(self, source: LieSuperalgebra, target: LieSuperalgebra, matrix, check: bool = True):
        if source.field != target.field:
            raise FieldError("homomorphism between algebras over different fields")
        f = source.field
        M = matrix.matrix if isinstance(matrix, GradedLinearMap) else matrix
        if not isinstance(M, np.ndarray) or M.dtype != f.dtype:
            M = f.array(M).reshape(target.n, source.n)
        self.source = source
        self.target = target
        self.map = GradedLinearMap(f, source.dim, target.dim, M)
        if check:
            bad = first_bracket_defect(source, target, self.map.matrix)
            if bad is not None:
                i, j = bad
                raise NotAHomomorphism(
                    f"f[{source.names[i]},{source.names[j]}] != [f({source.names[i]}),f({source.names[j]})]"
                )

    @property
    def matrix(self) -> np.ndarray:
        return self.map.matrix

    def __call__(self, v) -> np.ndarray:
        return self.map(v)

    def kernel(self) -> GradedSubspace:
        return self.map.kernel()

    def image(self) -> GradedSubspace:
        return self.map.image()

    def is_injective(self) -> bool:
        return self.map.rank == self.source.n

    def is_surjective(self) -> bool:
        return self.map.rank == self.target.n

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        return Homomorphism(inner.source, self.target, self.map.compose(inner.map).matrix, check=False)

    @classmethod
    def identity(cls, L: LieSuperalgebra) -> "Homomorphism":
        return cls(L, L, L.field.identity(L.n), check=False)

    @classmethod
    def zero(cls, source: LieSuperalgebra, target: LieSuperalgebra) -> "Homomorphism":
        return cls(source, target, source.field.zeros((target.n, source.n)), check=False)


def first_bracket_defect(source: LieSuperalgebra, target: LieSuperalgebra, M: np.ndarray):
    """First basis pair (i, j) with ``M[b_i, b_j] != [M b_i, M b_j]``, or None."""
    f = source.field
    n = source.n
    if n == 0:
        return None
    cols = [M[:, i] for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = matmul(M, source.constants[i, j], f) if target.n else f.zeros(0)
            rhs = target.bracket(cols[i], cols[j]) if target.n else f.zeros(0)
            if np.any(lhs != rhs):
                return i, j
    return None


def kernel(f: Homomorphism) -> GradedSubspace:
    return f.kernel()


def image(f: Homomorphism) -> GradedSubspace:
    return f.image()


def is_isomorphism(f: Homomorphism) -> bool:
    return f.is_isomorphism()


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Quotient:
    algebra: LieSuperalgebra
    projection: Homomorphism
    section: np.ndarray  # representatives in source coordinates, one row per quotient basis vector
    kept: tuple[int, ...]


def quotient(L: LieSuperalgebra, I: GradedSubspace, name: str | None = None) -> Quotient:
    """``L / I`` on the deterministic section of standard-vector representatives."""
    if I.host != L.dim or I.field != L.field:
        raise ValueError("subspace does not live in this algebra")
    if not is_graded_ideal(L, I):
        raise NotAnIdeal("[I, L] is not contained in I")
    qs = quotient_structure(L.field, L.dim, I)
    P = qs.projection.matrix
    f = L.field
    kept = qs.kept
    q = len(kept)
    c = f.zeros((q, q, q))
    for a, i in enumerate(kept):
        for b, j in enumerate(kept):
            c[a, b] = matmul(P, L.constants[i, j], f) if L.n else c[a, b]
    d = qs.dim
    names = [L.names[i] for i in kept]
    Q = LieSuperalgebra(f, names[: d.even], names[d.even :], c, name=name, check=False)
    proj = Homomorphism(L, Q, P, check=False)
    return Quotient(Q, proj, qs.section, kept)


@dataclass(frozen=True, eq=False)
class DirectSum:
    algebra: LieSuperalgebra
    left_index: tuple[int, ...]  # coordinates of the left summand's basis in the sum
    right_index: tuple[int, ...]


def direct_sum_data(L: LieSuperalgebra, K: LieSuperalgebra, name: str | None = None) -> DirectSum:
    if L.field != K.field:
        raise FieldError("direct sum of algebras over different fields")
    f = L.field
    ev = L.dim.even + K.dim.even
    left = [i if i < L.dim.even else i + K.dim.even for i in range(L.n)]
    right = [
        L.dim.even + i if i < K.dim.even else ev + L.dim.odd + (i - K.dim.even) for i in range(K.n)
    ]
    n = L.n + K.n
    c = f.zeros((n, n, n))
    for src, idx in ((L, left), (K, right)):
        ix = np.array(idx, dtype=np.int64)
        if len(ix):
            c[np.ix_(ix, ix, ix)] = src.constants
    names = _unique(list(L.even_names) + list(K.even_names) + list(L.odd_names) + list(K.odd_names))
    S = LieSuperalgebra(f, names[:ev], names[ev:], c, name=name, check=False)
    return DirectSum(S, tuple(left), tuple(right))


def direct_sum(L: LieSuperalgebra, K: LieSuperalgebra, name: str | None = None) -> LieSuperalgebra:
    if name is None and L.name and K.name:
        name = f"{L.name}+{K.name}"
    return direct_sum_data(L, K, name).algebra


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def generated_subalgebra(L: LieSuperalgebra, vectors) -> GradedSubspace:
    """Subalgebra generated by homogeneous vectors: close the span under brackets."""
    W = L.subspace(vectors) if len(vectors) else L.zero_space()
    while True:
        nxt = W + bracket_spaces(L, W, W)
        if nxt == W:
            return W
        W = nxt


def generates_algebra(L: LieSuperalgebra, vectors) -> bool:
    return generated_subalgebra(L, vectors).dim == L.dim


@dataclass(frozen=True, eq=False)
class GeneratorSearch:
    even: int
    odd: int
    generators: tuple[np.ndarray, ...]
    certified: bool  # minimality proven (lower bound met, or exhaustive over a finite field)

    @property
    def total(self) -> int:
        return self.even + self.odd


def _homogeneous_candidates(L: LieSuperalgebra, parity: int, extended: bool) -> list[np.ndarray]:
    """Standard basis vectors first; then (if extended) other normalized vectors in lex order."""
    f = L.field
    block = list(L.dim.block(parity))
    out = [L.basis_vector(i) for i in block]
    if not extended or len(block) < 2:
        return out
    if f.is_finite:
        values = range(f.p)
    else:
        values = (0, 1, -1, 2, -2)
    for coeffs in itertools.product(values, repeat=len(block)):
        nzs = [c for c in coeffs if c != 0]
        if len(nzs) < 2 or nzs[0] != 1:
            continue
        v = f.zeros(L.n)
        for i, c in zip(block, coeffs):
            v[i] = f(c)
        out.append(v)
    return out


def minimal_homogeneous_generators(
    L: LieSuperalgebra, cap: int = DEFAULT_GENERATOR_CAP, max_checks: int = 200_000
) -> GeneratorSearch:
    """Smallest homogeneous generating set, searched by increasing size.

    Any generating set spans L modulo L', so ``dim L/L'`` per parity is a
    lower bound; a set meeting it is certainly minimal. Within a size class,
    splits are tried by ascending even count and candidate sets in
    lexicographic order of the candidate list.
    """
    if L.n > cap:
        raise SearchCapExceeded(f"generator search capped at total dimension {cap}, got {L.n}")
    D = L.derived.dim
    lb = GradedDim(L.dim.even - D.even, L.dim.odd - D.odd)

    def search(cands, lo, hi, checks):
        for k in range(lo, hi + 1):
            for a in range(0, k + 1):
                b = k - a
                if a < lb.even or b < lb.odd or a > L.dim.even or b > L.dim.odd:
                    continue
                for ev in itertools.combinations(range(len(cands[0])), a):
                    for od in itertools.combinations(range(len(cands[1])), b):
                        checks[0] += 1
                        if checks[0] > max_checks:
                            raise SearchCapExceeded("generator search exceeded its check budget")
                        gens = [cands[0][i] for i in ev] + [cands[1][i] for i in od]
                        if generates_algebra(L, gens):
                            return a, b, tuple(gens)
        return None

    checks = [0]
    basis_cands = (_homogeneous_candidates(L, 0, False), _homogeneous_candidates(L, 1, False))
    found = search(basis_cands, lb.total, L.n, checks)
    assert found is not None  # the full basis always generates
    a, b, gens = found
    if a + b == lb.total:
        return GeneratorSearch(a, b, gens, True)
    ext = (_homogeneous_candidates(L, 0, True), _homogeneous_candidates(L, 1, True))
    better = search(ext, lb.total, a + b - 1, checks)
    if better is not None:
        a, b, gens = better
    certified = L.field.is_finite or a + b == lb.total
    return GeneratorSearch(a, b, gens, certified)
