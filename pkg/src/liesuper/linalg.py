"""Exact and Z2-graded linear algebra over a :class:`~liesuper.fields.Field`.

Matrices are numpy arrays: ``int64`` for GF(p), ``object`` arrays of
``Fraction`` for Q. Row vectors throughout; a subspace is the row space of
its reduced echelon basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .fields import Field, FieldError


class NotASubspaceError(ValueError):
    pass


class GradingError(ValueError):
    """A vector or map does not respect the Z2-grading."""


# ---------------------------------------------------------------------------
# ungraded kernels
# ---------------------------------------------------------------------------


def _as_matrix(a, field: Field, ncols: int | None = None) -> np.ndarray:
    if not isinstance(a, np.ndarray):
        if len(a) == 0:
            return field.zeros((0, ncols or 0))
        a = field.array([list(np.asarray(v).reshape(-1)) for v in a])
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else field.zeros((0, ncols or 0))
    if field.p is None and a.dtype != object:
        if a.dtype.kind not in "iu":
            raise FieldError(f"array of dtype {a.dtype} is not exact")
        a = field.array(a)
    elif field.p is not None and a.dtype == object:
        a = field.check_array(a)
    elif field.p is not None and a.dtype != np.int64:
        if a.dtype.kind not in "iu":
            raise FieldError(f"array of dtype {a.dtype} is not over {field}")
        a = np.mod(a.astype(np.int64), field.p)
    return a


def rref(a: np.ndarray, field: Field):
    """Reduced row echelon form; returns ``(R, pivots)`` with R the same shape as a."""
    a = _as_matrix(a, field)
    if field.is_finite:
        R, piv = _kernels.rref_mod_p(a, field.p)
        return R, tuple(int(c) for c in piv)
    R = a.copy()
    nrows, ncols = R.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if R[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = R[r] / R[r, c]
        for i in range(nrows):
            if i != r and R[i, c] != 0:
                R[i] = R[i] - R[i, c] * R[r]
        pivots.append(c)
        r += 1
    return R, tuple(pivots)


def rank(a, field: Field) -> int:
    a = _as_matrix(a, field)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return len(rref(a, field)[1])


def row_basis(a, field: Field, ncols: int | None = None) -> np.ndarray:
    """Canonical (reduced echelon) basis of the row space."""
    a = _as_matrix(a, field, ncols)
    if a.shape[0] == 0:
        return field.zeros((0, a.shape[1]))
    R, piv = rref(a, field)
    return R[: len(piv)]


def solve_kernel(rows, field: Field, ncols: int | None = None) -> np.ndarray:
    """Reduced echelon basis of ``{x : rows @ x = 0}``.

    Entries are validated against ``field``; a matrix mixing fields raises
    :class:`FieldError`.
    """
    a = _as_matrix(rows, field, ncols)
    a = field.check_array(a)
    n = a.shape[1]
    if a.shape[0] == 0:
        return field.identity(n)
    R, piv = rref(a, field)
    free = [c for c in range(n) if c not in piv]
    basis = field.zeros((len(free), n))
    for row, f in enumerate(free):
        basis[row, f] = field.one
        for r, c in enumerate(piv):
            basis[row, c] = field.reduce(-R[r, f]) if field.is_finite else -R[r, f]
    if field.is_finite:
        basis = field.reduce(basis)
    return row_basis(basis, field, n)


def solve(a, b, field: Field):
    """Some x with ``x @ a = b`` (row combination), or None if inconsistent."""
    a = _as_matrix(a, field)
    b = np.asarray(b, dtype=a.dtype)
    k, n = a.shape
    if k == 0:
        return field.zeros(0) if all(x == 0 for x in b) else None
    aug = field.zeros((n, k + 1))
    aug[:, :k] = a.T
    aug[:, k] = b
    R, piv = rref(aug, field)
    if k in piv:
        return None
    x = field.zeros(k)
    for r, c in enumerate(piv):
        x[c] = R[r, k]
    return x


def coordinates(basis: np.ndarray, vectors: np.ndarray, field: Field) -> np.ndarray:
    """Coordinates of each row of ``vectors`` w.r.t. the rows of ``basis``."""
    vectors = _as_matrix(vectors, field, basis.shape[1])
    out = field.zeros((vectors.shape[0], basis.shape[0]))
    for i, v in enumerate(vectors):
        x = solve(basis, v, field)
        if x is None:
            raise NotASubspaceError("vector is not in the span of the basis")
        out[i] = x
    return out


def inverse(a: np.ndarray, field: Field) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = field.zeros((n, 2 * n))
    aug[:, :n] = a
    aug[:, n:] = field.identity(n)
    R, piv = rref(aug, field)
    if n and piv[:n] != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def matmul(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    if a.shape[-1] == 0:
        return field.zeros(a.shape[:-1] + b.shape[1:])
    return field.reduce(a @ b)


def enumerate_subspaces(field: Field, n: int) -> Iterator[np.ndarray]:
    """Every subspace of GF(p)^n as its reduced echelon basis, ordered by dimension."""
    if not field.is_finite:
        raise FieldError("subspace enumeration needs a finite field")
    p = field.p
    for k in range(n + 1):
        for piv in itertools.combinations(range(n), k):
            free_slots = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
            for values in itertools.product(range(p), repeat=len(free_slots)):
                m = np.zeros((k, n), dtype=np.int64)
                for r, c in enumerate(piv):
                    m[r, c] = 1
                for (r, c), v in zip(free_slots, values):
                    m[r, c] = v
                yield m


# ---------------------------------------------------------------------------
# graded types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=False)
class GradedDim:
    even: int
    odd: int

    def __post_init__(self):
        if self.even < 0 or self.odd < 0:
            raise ValueError("dimensions are non-negative")

    @property
    def total(self) -> int:
        return self.even + self.odd

    def __le__(self, other: "GradedDim") -> bool:
        return self.even <= other.even and self.odd <= other.odd

    def __lt__(self, other: "GradedDim") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "GradedDim") -> bool:
        return other <= self

    def __gt__(self, other: "GradedDim") -> bool:
        return other < self

    def __add__(self, other: "GradedDim") -> "GradedDim":
        return GradedDim(self.even + other.even, self.odd + other.odd)

    def __sub__(self, other: "GradedDim") -> "GradedDim":
        return GradedDim(self.even - other.even, self.odd - other.odd)

    def __iter__(self):
        return iter((self.even, self.odd))

    def __str__(self) -> str:
        return f"({self.even}|{self.odd})"

    def block(self, parity: int) -> range:
        """Coordinate indices of one parity block (even block first)."""
        return range(0, self.even) if parity == 0 else range(self.even, self.total)

    def parity_of(self, i: int) -> int:
        return 0 if i < self.even else 1

    def to_json(self):
        return [self.even, self.odd]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    a.flags.writeable = False
    return a


class GradedSubspace:
    """A graded subspace of ``field^host`` with parity-split reduced echelon bases.

    Construction canonicalizes, so two instances are equal iff they describe the
    same subspace.
    """

    __slots__ = ("field", "host", "even", "odd")

    def __init__(self, field: Field, host: GradedDim, even=None, odd=None):
        n = host.total
        self.field = field
        self.host = host
        even = field.zeros((0, n)) if even is None else _as_matrix(even, field, n)
        odd = field.zeros((0, n)) if odd is None else _as_matrix(odd, field, n)
        for parity, rows in ((0, even), (1, odd)):
            other = host.block(1 - parity)
            for v in rows:
                if any(v[i] != 0 for i in other):
                    raise GradingError(f"vector {list(v)} is not homogeneous of parity {parity}")
        self.even = _readonly(row_basis(even, field, n))
        self.odd = _readonly(row_basis(odd, field, n))

    @classmethod
    def span(cls, field: Field, host: GradedDim, vectors) -> "GradedSubspace":
        """Span of homogeneous vectors; an inhomogeneous vector raises GradingError."""
        n = host.total
        vecs = _as_matrix(vectors, field, n) if len(vectors) else field.zeros((0, n))
        ev, od = [], []
        for v in vecs:
            in_even = any(v[i] != 0 for i in host.block(0))
            in_odd = any(v[i] != 0 for i in host.block(1))
            if in_even and in_odd:
                raise GradingError(f"vector {list(v)} is not homogeneous")
            if in_even:
                ev.append(v)
            elif in_odd:
                od.append(v)
        e = np.array(ev, dtype=vecs.dtype).reshape(-1, n) if ev else field.zeros((0, n))
        o = np.array(od, dtype=vecs.dtype).reshape(-1, n) if od else field.zeros((0, n))
        return cls(field, host, e, o)

    @classmethod
    def zero(cls, field: Field, host: GradedDim) -> "GradedSubspace":
        return cls(field, host)

    @classmethod
    def full(cls, field: Field, host: GradedDim) -> "GradedSubspace":
        eye = field.identity(host.total)
        return cls(field, host, eye[: host.even], eye[host.even :])

    @classmethod
    def from_indices(cls, field: Field, host: GradedDim, indices: Iterable[int]) -> "GradedSubspace":
        eye = field.identity(host.total)
        return cls.span(field, host, [eye[i] for i in indices])

    # -- basic queries ----------------------------------------------------------

    @property
    def dim(self) -> GradedDim:
        return GradedDim(self.even.shape[0], self.odd.shape[0])

    @property
    def basis(self) -> np.ndarray:
        """Homogeneous basis, even vectors first."""
        return np.concatenate([self.even, self.odd], axis=0)

    def parity_basis(self, parity: int) -> np.ndarray:
        return self.even if parity == 0 else self.odd

    def is_zero(self) -> bool:
        return self.dim.total == 0

    def _check_host(self, other: "GradedSubspace"):
        if self.field != other.field or self.host != other.host:
            raise ValueError("subspaces live in different hosts")

    def contains_vector(self, v) -> bool:
        v = np.asarray(v, dtype=self.basis.dtype)
        for parity in (0, 1):
            blk = list(self.host.block(parity))
            part = self.field.zeros(self.host.total)
            part[blk] = v[blk]
            if all(x == 0 for x in part):
                continue
            B = self.parity_basis(parity)
            if solve(B, part, self.field) is None:
                return False
        return True

    def __le__(self, other: "GradedSubspace") -> bool:
        self._check_host(other)
        return all(other.contains_vector(v) for v in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.host == other.host
            and self.even.shape == other.even.shape
            and self.odd.shape == other.odd.shape
            and bool(np.all(self.even == other.even))
            and bool(np.all(self.odd == other.odd))
        )

    def __hash__(self):
        return hash((self.field, self.host, tuple(map(tuple, self.basis.tolist()))))

    def __repr__(self) -> str:
        return f"GradedSubspace(dim={self.dim}, host={self.host})"

    # -- lattice operations -----------------------------------------------------

    def __add__(self, other: "GradedSubspace") -> "GradedSubspace":
        self._check_host(other)
        return GradedSubspace(
            self.field,
            self.host,
            np.concatenate([self.even, other.even]),
            np.concatenate([self.odd, other.odd]),
        )

    def __and__(self, other: "GradedSubspace") -> "GradedSubspace":
        self._check_host(other)
        parts = []
        for parity in (0, 1):
            U = self.parity_basis(parity)
            W = other.parity_basis(parity)
            if U.shape[0] == 0 or W.shape[0] == 0:
                parts.append(self.field.zeros((0, self.host.total)))
                continue
            # a U = b W  <=>  [a | b] [U ; -W] = 0
            stacked = np.concatenate([U, self.field.reduce(-W) if self.field.is_finite else -W])
            coeffs = solve_kernel(stacked.T, self.field)
            vecs = matmul(coeffs[:, : U.shape[0]], U, self.field)
            parts.append(vecs)
        return GradedSubspace(self.field, self.host, parts[0], parts[1])

    def complement_in(self, inside: "GradedSubspace") -> "GradedSubspace":
        return complement(self, inside)

    def embed(self, host: GradedDim, index_map) -> "GradedSubspace":
        """Push the subspace into a bigger host along a coordinate index map."""
        n = host.total
        ev = self.field.zeros((self.even.shape[0], n))
        od = self.field.zeros((self.odd.shape[0], n))
        for src, dst in enumerate(index_map):
            ev[:, dst] = self.even[:, src]
            od[:, dst] = self.odd[:, src]
        return GradedSubspace(self.field, host, ev, od)


def sum_subspaces(U: GradedSubspace, W: GradedSubspace) -> GradedSubspace:
    return U + W


def intersect(U: GradedSubspace, W: GradedSubspace) -> GradedSubspace:
    return U & W


def complement(U: GradedSubspace, inside: GradedSubspace) -> GradedSubspace:
    """Deterministic graded complement S of U in ``inside`` (U + S = inside, U & S = 0).

    Per parity block, U is written in coordinates of the echelon basis of
    ``inside``; S is spanned by the basis vectors of ``inside`` at the
    non-pivot positions. When ``inside`` is the whole host these are the
    standard coordinate vectors completing U's echelon basis.
    """
    U._check_host(inside)
    field = U.field
    parts = []
    for parity in (0, 1):
        B = inside.parity_basis(parity)
        Ub = U.parity_basis(parity)
        if Ub.shape[0] == 0:
            parts.append(B)
            continue
        try:
            C = coordinates(B, Ub, field)
        except NotASubspaceError:
            raise NotASubspaceError("U is not contained in the ambient subspace") from None
        _, piv = rref(C, field)
        keep = [i for i in range(B.shape[0]) if i not in piv]
        parts.append(B[keep])
    return GradedSubspace(field, U.host, parts[0], parts[1])


@dataclass(frozen=True, eq=False)
class GradedLinearMap:
    """Degree-zero linear map; ``matrix`` is (codomain x domain) with no mixed-parity entries."""

    field: Field
    domain: GradedDim
    codomain: GradedDim
    matrix: np.ndarray

    def __post_init__(self):
        M = self.matrix
        if M.shape != (self.codomain.total, self.domain.total):
            raise ValueError(
                f"matrix shape {M.shape} does not match {self.codomain} <- {self.domain}"
            )
        for parity in (0, 1):
            rows = list(self.codomain.block(1 - parity))
            cols = list(self.domain.block(parity))
            if rows and cols and any(x != 0 for x in M[np.ix_(rows, cols)].reshape(-1)):
                raise GradingError("linear map is not of degree zero")
        object.__setattr__(self, "matrix", _readonly(M))

    @property
    def even_block(self) -> np.ndarray:
        return self.matrix[: self.codomain.even, : self.domain.even]

    @property
    def odd_block(self) -> np.ndarray:
        return self.matrix[self.codomain.even :, self.domain.even :]

    def __call__(self, v) -> np.ndarray:
        return matmul(self.matrix, np.asarray(v, dtype=self.matrix.dtype), self.field)

    def compose(self, inner: "GradedLinearMap") -> "GradedLinearMap":
        """``self o inner``."""
        if inner.codomain != self.domain:
            raise ValueError("cannot compose: dimension mismatch")
        return GradedLinearMap(self.field, inner.domain, self.codomain, matmul(self.matrix, inner.matrix, self.field))

    def inverse(self) -> "GradedLinearMap":
        return GradedLinearMap(self.field, self.codomain, self.domain, inverse(self.matrix, self.field))

    @property
    def rank(self) -> int:
        return rank(self.matrix, self.field)

    def is_bijective(self) -> bool:
        return self.domain == self.codomain and self.rank == self.domain.total

    def kernel(self) -> GradedSubspace:
        parts = []
        for parity in (0, 1):
            cols = list(self.domain.block(parity))
            sub = self.matrix[:, cols]
            K = solve_kernel(sub, self.field, len(cols))
            full = self.field.zeros((K.shape[0], self.domain.total))
            full[:, cols] = K
            parts.append(full)
        return GradedSubspace(self.field, self.domain, parts[0], parts[1])

    def image(self) -> GradedSubspace:
        return GradedSubspace.span(self.field, self.codomain, list(self.matrix.T))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        return (
            self.field == other.field
            and self.domain == other.domain
            and self.codomain == other.codomain
            and bool(np.all(self.matrix == other.matrix))
        )

    @classmethod
    def identity(cls, field: Field, dim: GradedDim) -> "GradedLinearMap":
        return cls(field, dim, dim, field.identity(dim.total))


@dataclass(frozen=True, eq=False)
class QuotientStructure:
    """Projection ``host -> host/U`` and the standard-vector section of coset representatives."""

    projection: GradedLinearMap
    section: np.ndarray  # rows: representatives in host coordinates, even first
    kept: tuple[int, ...]  # host coordinates used as representatives

    @property
    def dim(self) -> GradedDim:
        return self.projection.codomain


def quotient_structure(field: Field, host: GradedDim, U: GradedSubspace) -> QuotientStructure:
    """Projection onto ``host / U`` with kernel exactly U.

    Representatives are the standard basis vectors at coordinates that are not
    pivots of U's echelon basis (per parity block). The projection of a vector
    is read off after reducing it by U's echelon rows.
    """
    if U.host != host or U.field != field:
        raise ValueError("subspace does not live in this host")
    n = host.total
    kept = []
    pivot_rows = {}
    qdims = []
    for parity in (0, 1):
        B = U.parity_basis(parity)
        _, piv = rref(B, field) if B.shape[0] else (None, ())
        for r, c in enumerate(piv):
            pivot_rows[c] = B[r]
        ks = [i for i in host.block(parity) if i not in piv]
        kept.extend(ks)
        qdims.append(len(ks))
    qdim = GradedDim(*qdims)
    pos = {c: q for q, c in enumerate(kept)}
    P = field.zeros((qdim.total, n))
    for j in range(n):
        if j in pos:
            P[pos[j], j] = field.one
        else:
            row = pivot_rows[j]
            for c, q in pos.items():
                if row[c] != 0:
                    P[q, j] = field.reduce(-row[c]) if field.is_finite else -row[c]
    section = field.zeros((qdim.total, n))
    for q, c in enumerate(kept):
        section[q, c] = field.one
    return QuotientStructure(GradedLinearMap(field, host, qdim, P), _readonly(section), tuple(kept))
