"""Exhaustive searches for homomorphisms over GF(p).

Maps are built one basis column at a time. Bracket conditions are checked
as soon as every column they touch has been fixed, batched over all
candidate images of the current column.
"""
from __future__ import annotations

import itertools
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .algebra import Homomorphism, LieSuperalgebra, SearchCapExceeded
from .fields import FieldError

DEFAULT_MAX_NODES = 5_000_000


class FieldNotFinite(FieldError):
    """An exhaustive search was requested over the rationals."""


def block_vectors(dim: int, offset: int, width: int, p: int, nonzero: bool = True, first: int | None = None) -> np.ndarray:
    """All vectors of ``GF(p)^width`` placed at ``offset`` in a length-``dim`` vector.

    Lexicographic order on the block coordinates; the standard vector
    ``e_first`` (block-relative) is moved to the front when given.
    """
    rows = []
    for coeffs in itertools.product(range(p), repeat=width):
        if nonzero and not any(coeffs):
            continue
        rows.append(coeffs)
    if first is not None and 0 <= first < width:
        e = tuple(1 if k == first else 0 for k in range(width))
        rows.remove(e)
        rows.insert(0, e)
    out = np.zeros((len(rows), dim), dtype=np.int64)
    if rows and width:
        out[:, offset : offset + width] = np.array(rows, dtype=np.int64)
    return out


def _ready_pairs(cs: np.ndarray) -> list[np.ndarray]:
    """For each column i, the basis pairs whose bracket condition becomes checkable at i."""
    n = cs.shape[0]
    ready: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for s in range(n):
        for t in range(n):
            support = np.nonzero(cs[s, t])[0]
            lvl = max([s, t] + [int(k) for k in support])
            ready[lvl].append((s, t))
    return [np.array(r, dtype=np.int64).reshape(-1, 2) for r in ready]


def search_homomorphisms(
    source: LieSuperalgebra,
    target: LieSuperalgebra,
    candidates: Sequence[np.ndarray],
    injective: bool = False,
    accept: Callable[[np.ndarray], bool] | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> np.ndarray | None:
    """First matrix (in candidate order) whose columns come from ``candidates`` and
    which is a homomorphism ``source -> target`` passing ``accept``.

    ``candidates[i]`` is an ``(N_i, target.n)`` int64 array of allowed images of
    basis vector i. Depth-first, so the result is the lexicographically first
    admissible column tuple.
    """
    f = source.field
    if not f.is_finite:
        raise FieldNotFinite("exhaustive homomorphism search needs GF(p)")
    p = f.p
    n, m = source.n, target.n
    cs = np.asarray(source.constants, dtype=np.int64)
    ct = np.asarray(target.constants, dtype=np.int64)
    ready = _ready_pairs(cs) if n else []
    G = np.zeros((m, n), dtype=np.int64)
    nodes = [0]
    par = source.parities

    def rec(i: int):
        if i == n:
            if accept is None or accept(G):
                return G.copy()
            return None
        C = np.asarray(candidates[i], dtype=np.int64).reshape(-1, m)
        N = C.shape[0]
        if N == 0:
            return None
        nodes[0] += N
        if nodes[0] > max_nodes:
            raise SearchCapExceeded(f"homomorphism search exceeded {max_nodes} candidate columns")
        maps = np.repeat(G[None], N, axis=0)
        maps[:, :, i] = C
        mask = _kernels.batch_hom_mask(cs, ct, maps, ready[i], p)
        if injective and mask.any():
            same = [j for j in range(i) if par[j] == par[i]]
            stack = np.concatenate(
                [np.repeat(G[:, same].T[None], N, axis=0), C[:, None, :]], axis=1
            )
            mask &= _kernels.batch_rank_mod_p(stack, p) == len(same) + 1
        for idx in np.nonzero(mask)[0]:
            G[:, i] = C[idx]
            found = rec(i + 1)
            if found is not None:
                return found
        G[:, i] = 0
        return None

    return rec(0)


def find_isomorphism(
    L: LieSuperalgebra, K: LieSuperalgebra, max_nodes: int = DEFAULT_MAX_NODES
) -> Homomorphism | None:
    """An isomorphism ``L -> K`` over GF(p), identity-like columns tried first."""
    if L.field != K.field:
        raise FieldError("algebras over different fields")
    if not L.field.is_finite:
        raise FieldNotFinite("isomorphism search needs GF(p)")
    if L.dim != K.dim:
        return None
    p = L.field.p
    cands = []
    for i in range(L.n):
        par = L.parity(i)
        off = 0 if par == 0 else K.dim.even
        width = K.dim.even if par == 0 else K.dim.odd
        cands.append(block_vectors(K.n, off, width, p, nonzero=True, first=i - off))
    G = search_homomorphisms(L, K, cands, injective=True, max_nodes=max_nodes)
    if G is None:
        return None
    return Homomorphism(L, K, G)
