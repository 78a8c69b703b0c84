"""Schur multipliers, central extensions and stem covers.

The multiplier is computed per parity as second cohomology with trivial
one-dimensional coefficients. A form ``b`` of parity ``r`` is stored densely
as an ``(n, n)`` matrix; its free coordinates ("slots") are the pairs
``i <= j`` with ``|b_i| + |b_j| = r``, excluding the diagonal of even vectors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .algebra import (
    AxiomViolation,
    Homomorphism,
    LieSuperalgebra,
    _unique,
    quotient,
)
from .fields import FieldError
from .isoclinism import DEFAULT_CAPS, IsoclinismDecision, SearchCaps, decide_isoclinic
from .linalg import (
    GradedDim,
    GradedSubspace,
    complement,
    enumerate_subspaces,
    matmul,
    rank,
    row_basis,
    solve,
    solve_kernel,
)
from .search import DEFAULT_MAX_NODES, FieldNotFinite, search_homomorphisms


class InvalidCocycle(ValueError):
    def __init__(self, axiom: str, indices: tuple[int, ...], detail: str = ""):
        self.axiom = axiom
        self.indices = indices
        msg = f"{axiom} fails at {indices}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NotExact(ValueError):
    pass


class StemComplementNotFound(RuntimeError):
    pass


class CoverMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------


def _sign_matrix(par: np.ndarray) -> np.ndarray:
    return np.where(np.outer(par, par) == 1, -1, 1).astype(np.int64)


def slots(L: LieSuperalgebra, parity: int) -> list[tuple[int, int]]:
    par = L.parities
    out = []
    for i in range(L.n):
        for j in range(i, L.n):
            if par[i] ^ par[j] != parity:
                continue
            if i == j and par[i] == 0:
                continue
            out.append((i, j))
    return out


def form_from_slots(L: LieSuperalgebra, parity: int, values) -> np.ndarray:
    f = L.field
    par = L.parities
    B = f.zeros((L.n, L.n))
    for (i, j), v in zip(slots(L, parity), values):
        B[i, j] = v
        if i != j:
            B[j, i] = f.reduce(-v) if par[i] == 0 or par[j] == 0 else v
    return B


def slots_from_form(L: LieSuperalgebra, parity: int, B: np.ndarray) -> np.ndarray:
    f = L.field
    return f.array([B[i, j] for i, j in slots(L, parity)]) if slots(L, parity) else f.zeros(0)


def cocycle_defect(L: LieSuperalgebra, B: np.ndarray) -> np.ndarray:
    """``(x, y, z) -> s(x,z) b(x,[y,z]) + s(y,x) b(y,[z,x]) + s(z,y) b(z,[x,y])``."""
    f = L.field
    n = L.n
    if n == 0:
        return f.zeros((0, 0, 0))
    c = L.constants
    s = _sign_matrix(L.parities)
    if not f.is_finite:
        s = s.astype(object)
    t1 = np.einsum("yzk,xk->xyz", c, B)
    t2 = np.einsum("zxk,yk->xyz", c, B)
    t3 = np.einsum("xyk,zk->xyz", c, B)
    out = s[:, None, :] * t1 + s[:, :, None] * t2 + s[None, :, :] * t3
    return f.reduce(out)


@dataclass(frozen=True, eq=False)
class Cocycle:
    """A graded-antisymmetric form with values in a trivial line of parity ``parity``."""

    host: LieSuperalgebra
    parity: int
    values: np.ndarray  # (n, n)

    @property
    def slot_vector(self) -> np.ndarray:
        return slots_from_form(self.host, self.parity, self.values)

    def __call__(self, u, v):
        f = self.host.field
        return f.reduce(np.asarray(u) @ self.values @ np.asarray(v))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cocycle)
            and other.parity == self.parity
            and other.host.same_constants(self.host)
            and bool(np.all(other.values == self.values))
        )

    def __hash__(self):
        return hash((self.parity, self.values.shape))


def check_cocycle(L: LieSuperalgebra, parity: int, B: np.ndarray) -> None:
    """Raise :class:`InvalidCocycle` naming the first failing axiom."""
    f = L.field
    B = B if isinstance(B, np.ndarray) and B.dtype == f.dtype else f.array(B)
    if B.shape != (L.n, L.n):
        raise ValueError(f"cocycle must be {L.n}x{L.n}, got {B.shape}")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    par = L.parities
    for i in range(L.n):
        for j in range(L.n):
            if B[i, j] != 0 and par[i] ^ par[j] != parity:
                raise InvalidCocycle("support", (i, j), f"pair has parity {par[i] ^ par[j]}")
    for i in range(L.n):
        for j in range(i, L.n):
            sgn = -1 if par[i] and par[j] else 1
            if B[j, i] != f(-sgn * B[i, j]):
                raise InvalidCocycle("antisymmetry", (i, j))
    D = cocycle_defect(L, B)
    nz = np.argwhere(D != 0)
    if len(nz):
        raise InvalidCocycle("cocycle identity", tuple(int(t) for t in nz[0]))


def make_cocycle(L: LieSuperalgebra, parity: int, entries, complete: bool = True) -> Cocycle:
    """Build and check a cocycle from a dense matrix or ``{(i, j): value}``.

    With ``complete`` the partner entry ``(j, i)`` is filled by graded
    antisymmetry when only one of the two is given.
    """
    f = L.field
    if isinstance(entries, Mapping):
        B = f.zeros((L.n, L.n))
        given = {}
        for (i, j), v in entries.items():
            i, j = L.index(i) if isinstance(i, str) else int(i), L.index(j) if isinstance(j, str) else int(j)
            if not (0 <= i < L.n and 0 <= j < L.n):
                raise ValueError(f"index pair {(i, j)} out of range")
            B[i, j] = f(v)
            given[(i, j)] = True
        if complete:
            par = L.parities
            for (i, j) in list(given):
                if (j, i) in given:
                    continue
                sgn = -1 if par[i] and par[j] else 1
                B[j, i] = f(-sgn * B[i, j])
    else:
        B = f.array(entries).reshape(L.n, L.n) if L.n else f.zeros((0, 0))
    check_cocycle(L, parity, B)
    B.flags.writeable = False
    return Cocycle(L, parity, B)


# ---------------------------------------------------------------------------
# cocycles, coboundaries, multiplier
# ---------------------------------------------------------------------------


def _identity_matrix(L: LieSuperalgebra, parity: int) -> np.ndarray:
    """Rows: slots. Columns: basis triples. Entry = defect of the unit form at that triple."""
    f = L.field
    sl = slots(L, parity)
    rows = f.zeros((len(sl), L.n**3))
    for s in range(len(sl)):
        e = f.zeros(len(sl))
        e[s] = f.one
        rows[s] = cocycle_defect(L, form_from_slots(L, parity, e)).reshape(-1)
    return rows


def cocycle_space(L: LieSuperalgebra, parity: int) -> np.ndarray:
    """Echelon basis of Z^2(L; parity) in slot coordinates."""
    cached = L.__dict__.setdefault("_cocycle_space", {})
    if parity not in cached:
        f = L.field
        ns = len(slots(L, parity))
        M = _identity_matrix(L, parity)
        Z = solve_kernel(M.T, f, ns) if ns else f.zeros((0, 0))
        Z.flags.writeable = False
        cached[parity] = Z
    return cached[parity]


def coboundary_space(L: LieSuperalgebra, parity: int) -> np.ndarray:
    """Echelon basis of B^2(L; parity): forms ``f([x, y])`` with f on basis vectors of that parity."""
    f = L.field
    sl = slots(L, parity)
    rows = []
    for k in range(L.n):
        if L.parities[k] != parity:
            continue
        rows.append([L.constants[i, j, k] for i, j in sl])
    if not rows or not sl:
        return f.zeros((0, len(sl)))
    return row_basis(f.array(rows), f, len(sl))


def coboundary(L: LieSuperalgebra, functional) -> Cocycle:
    """The coboundary ``b(x, y) = f([x, y])`` of a homogeneous functional."""
    f = L.field
    fn = f.array(list(functional)) if L.n else f.zeros(0)
    support = {int(L.parities[k]) for k in np.nonzero(fn != 0)[0]}
    if len(support) > 1:
        raise ValueError("functional must be homogeneous")
    parity = support.pop() if support else 0
    B = f.reduce(np.einsum("ijk,k->ij", L.constants, fn)) if L.n else f.zeros((0, 0))
    return make_cocycle(L, parity, B)


@dataclass(frozen=True, eq=False)
class Multiplier:
    dim: GradedDim
    even: tuple[Cocycle, ...]
    odd: tuple[Cocycle, ...]

    def representatives(self, parity: int) -> tuple[Cocycle, ...]:
        return self.odd if parity else self.even


def _slot_space(L: LieSuperalgebra, parity: int, rows: np.ndarray) -> GradedSubspace:
    ns = len(slots(L, parity))
    host = GradedDim(ns, 0)
    if ns == 0 or rows.shape[0] == 0:
        return GradedSubspace.zero(L.field, host)
    return GradedSubspace(L.field, host, rows, None)


def multiplier_complement(L: LieSuperalgebra, parity: int) -> np.ndarray:
    """Slot vectors spanning the deterministic complement of B^2 in Z^2."""
    Z = _slot_space(L, parity, cocycle_space(L, parity))
    B = _slot_space(L, parity, coboundary_space(L, parity))
    if not B <= Z:
        raise RuntimeError("coboundary is not a cocycle; bracket table is inconsistent")
    return complement(B, Z).parity_basis(0)


def multiplier(L: LieSuperalgebra) -> Multiplier:
    cached = L.__dict__.get("_multiplier")
    if cached is not None:
        return cached
    reps = []
    for parity in (0, 1):
        vecs = multiplier_complement(L, parity)
        reps.append(tuple(Cocycle(L, parity, _readonly(form_from_slots(L, parity, v))) for v in vecs))
    out = Multiplier(GradedDim(len(reps[0]), len(reps[1])), reps[0], reps[1])
    L.__dict__["_multiplier"] = out
    return out


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


# ---------------------------------------------------------------------------
# central extensions
# ---------------------------------------------------------------------------


CLASSIFICATIONS = ("not-central", "central", "stem", "cover")


@dataclass(frozen=True, eq=False)
class CentralExtension:
    base: LieSuperalgebra
    total: LieSuperalgebra
    kernel: GradedSubspace
    projection: Homomorphism
    classification: str
    note: str = ""

    @property
    def is_central(self) -> bool:
        return self.classification in ("central", "stem", "cover")

    @property
    def is_stem(self) -> bool:
        return self.classification in ("stem", "cover")

    @property
    def is_cover(self) -> bool:
        return self.classification == "cover"


def twisted_constants(L: LieSuperalgebra, even: Sequence[np.ndarray], odd: Sequence[np.ndarray]):
    """Constants of ``L + span(z)`` with ``[x, y] = [x, y]_L + sum_r b_r(x, y) z_r``.

    Returns ``(even_names, odd_names, constants, index_of_L, index_of_z)``.
    Nothing is validated here.
    """
    f = L.field
    me, mo = L.dim.even, L.dim.odd
    ke, ko = len(even), len(odd)
    n = L.n + ke + ko
    old = [i if i < me else i + ke for i in range(L.n)]
    new = [me + r for r in range(ke)] + [me + ke + mo + r for r in range(ko)]
    c = f.zeros((n, n, n))
    ix = np.array(old, dtype=np.int64)
    if L.n:
        c[np.ix_(ix, ix, ix)] = L.constants
    for r, B in enumerate(list(even) + list(odd)):
        if L.n:
            c[np.ix_(ix, ix, [new[r]])] = np.asarray(B).reshape(L.n, L.n, 1)
    znames = [f"z{r + 1}" for r in range(ke + ko)]
    taken = set(L.names)
    k = 0
    for r in range(len(znames)):
        while znames[r] in taken:
            k += 1
            znames[r] = f"z{r + 1}_{k}"
        taken.add(znames[r])
    even_names = list(L.even_names) + znames[:ke]
    odd_names = list(L.odd_names) + znames[ke:]
    return even_names, odd_names, c, tuple(old), tuple(new)


def classify_extension(
    base: LieSuperalgebra, total: LieSuperalgebra, projection, kernel: GradedSubspace | None = None
) -> str:
    """Strongest of not-central / central / stem / cover for an exact sequence."""
    proj = projection if isinstance(projection, Homomorphism) else Homomorphism(total, base, projection)
    if not proj.is_surjective():
        raise NotExact("projection is not surjective")
    ker = proj.kernel()
    if kernel is not None and ker != kernel:
        raise NotExact("kernel of the projection differs from the given subspace")
    M = ker
    if not M <= total.center:
        return "not-central"
    if not M <= total.derived:
        return "central"
    if M.dim == multiplier(base).dim:
        return "cover"
    return "stem"


def extension(
    base: LieSuperalgebra, total: LieSuperalgebra, projection, note: str = ""
) -> CentralExtension:
    """Wrap an exact sequence ``total -> base`` with its classification."""
    proj = projection if isinstance(projection, Homomorphism) else Homomorphism(total, base, projection)
    tag = classify_extension(base, total, proj)
    return CentralExtension(base, total, proj.kernel(), proj, tag, note)


def central_extension_from_cocycles(
    L: LieSuperalgebra,
    even: Sequence[Cocycle | np.ndarray] = (),
    odd: Sequence[Cocycle | np.ndarray] = (),
    name: str | None = None,
    note: str = "",
) -> CentralExtension:
    forms = []
    for parity, group in ((0, even), (1, odd)):
        mats = []
        for b in group:
            B = b.values if isinstance(b, Cocycle) else b
            if isinstance(b, Cocycle) and b.parity != parity:
                raise InvalidCocycle("support", (), f"cocycle of parity {b.parity} listed as parity {parity}")
            check_cocycle(L, parity, B)
            mats.append(B)
        forms.append(mats)
    ev, od, c, old, new = twisted_constants(L, forms[0], forms[1])
    K = LieSuperalgebra(L.field, ev, od, c, name=name)
    f = L.field
    P = f.zeros((L.n, K.n))
    for i, j in enumerate(old):
        P[i, j] = f.one
    proj = Homomorphism(K, L, P)
    tag = classify_extension(L, K, proj)
    return CentralExtension(L, K, proj.kernel(), proj, tag, note)


def construct_stem_cover(L: LieSuperalgebra, name: str | None = None) -> CentralExtension:
    """Adjoin the full multiplier; if the stem condition fails, shift representatives by coboundaries."""
    mult = multiplier(L)
    nm = name or (f"cover({L.name})" if L.name else None)
    E = central_extension_from_cocycles(L, mult.even, mult.odd, name=nm, note="deterministic complement")
    if E.is_cover:
        return E
    # deterministic fallback: one representative plus one coboundary basis form, lexicographic order
    f = L.field
    base = [list(mult.even), list(mult.odd)]
    for parity in (0, 1):
        Bs = coboundary_space(L, parity)
        for r, rep in enumerate(base[parity]):
            for k, bvec in enumerate(Bs):
                shifted = f.reduce(rep.values + form_from_slots(L, parity, bvec))
                trial = [list(base[0]), list(base[1])]
                trial[parity][r] = Cocycle(L, parity, shifted)
                E = central_extension_from_cocycles(
                    L, trial[0], trial[1], name=nm,
                    note=f"representative {parity}:{r} shifted by coboundary {k}",
                )
                if E.is_cover:
                    return E
    raise StemComplementNotFound(f"no stem complement found for {L.name or 'algebra'}")


def cover_dimension(L: LieSuperalgebra) -> GradedDim:
    return L.dim + multiplier(L).dim


@dataclass(frozen=True, eq=False)
class StemQuotient:
    killed: GradedSubspace  # T inside the cover's kernel
    extension: CentralExtension  # K / T over the base


def quotient_extension(cover: CentralExtension, T: GradedSubspace) -> StemQuotient:
    if not T <= cover.kernel:
        raise ValueError("T must lie in the kernel of the cover")
    f = cover.base.field
    q = quotient(cover.total, T)
    P = matmul(cover.projection.matrix, q.section.T, f) if q.algebra.n else f.zeros((cover.base.n, 0))
    proj = Homomorphism(q.algebra, cover.base, P)
    tag = classify_extension(cover.base, q.algebra, proj)
    return StemQuotient(T, CentralExtension(cover.base, q.algebra, proj.kernel(), proj, tag))


def _kernel_subspaces(E: CentralExtension) -> Iterator[GradedSubspace]:
    f = E.base.field
    M = E.kernel
    ev = M.parity_basis(0)
    od = M.parity_basis(1)
    odd_list = list(enumerate_subspaces(f, od.shape[0]))
    for a in enumerate_subspaces(f, ev.shape[0]):
        for b in odd_list:
            e_rows = matmul(a, ev, f) if a.shape[0] else f.zeros((0, E.total.n))
            o_rows = matmul(b, od, f) if b.shape[0] else f.zeros((0, E.total.n))
            yield GradedSubspace(f, E.total.dim, e_rows, o_rows)


def stem_extensions_from_cover(
    cover: CentralExtension, subspaces: Iterable[GradedSubspace] | None = None
) -> Iterator[StemQuotient]:
    """``K / T`` for graded T inside the kernel; every graded T over GF(p) unless given."""
    if not cover.is_cover:
        raise ValueError(f"extension is classified {cover.classification}, not cover")
    if subspaces is None:
        if not cover.base.field.is_finite:
            raise FieldNotFinite("enumerating all kernel subspaces needs GF(p)")
        subspaces = _kernel_subspaces(cover)
    for T in subspaces:
        yield quotient_extension(cover, T)


def find_cover_epimorphism(
    stem: CentralExtension, cover: CentralExtension, max_nodes: int = DEFAULT_MAX_NODES
) -> Homomorphism | None:
    """First surjection ``g: cover.total -> stem.total`` with ``stem.projection o g = cover.projection``."""
    L = cover.base
    if not stem.base.same_constants(L) or stem.base.names != L.names:
        raise CoverMismatch("extensions have different bases")
    if not L.field.is_finite:
        raise FieldNotFinite("cover epimorphism search needs GF(p)")
    f = L.field
    p = f.p
    K, S = cover.total, stem.total
    Pk, Ps = cover.projection.matrix, stem.projection.matrix
    cands = []
    for i in range(K.n):
        par = K.parity(i)
        target = Pk[:, i]
        block = np.array(list(S.dim.block(par)), dtype=np.int64)
        A = Ps[:, block].T  # rows: images of the parity block
        x = solve(A, target, f) if len(block) else (f.zeros(0) if not np.any(target) else None)
        if x is None:
            return None
        base_vec = np.zeros(S.n, dtype=np.int64)
        base_vec[block] = np.asarray(x, dtype=np.int64)
        M = stem.kernel.parity_basis(par)
        rows = []
        for coeffs in itertools.product(range(p), repeat=M.shape[0]):
            v = base_vec.copy()
            for c, m in zip(coeffs, M):
                v = (v + c * np.asarray(m, dtype=np.int64)) % p
            rows.append(v)
        cands.append(np.array(rows, dtype=np.int64).reshape(-1, S.n))

    def surjective(G):
        return rank(G, f) == S.n

    G = search_homomorphisms(K, S, cands, accept=surjective, max_nodes=max_nodes)
    return None if G is None else Homomorphism(K, S, G)


def covers_isoclinic_check(
    L: LieSuperalgebra, a: CentralExtension, b: CentralExtension, caps: SearchCaps = DEFAULT_CAPS
) -> IsoclinismDecision:
    for E in (a, b):
        if not E.base.same_constants(L):
            raise CoverMismatch("extension is not over the given base")
        if not E.is_cover:
            raise ValueError(f"extension is classified {E.classification}, not cover")
    dec = decide_isoclinic(a.total, b.total, caps=caps)
    if not dec.isoclinic:
        raise RuntimeError(f"covers of one base failed to be isoclinic: {dec.verdict} ({dec.reason})")
    return dec
