"""GF(p) hot loops: row reduction, batched ranks, batched bracket checks.

Each kernel has a numba ``@njit`` version and a pure-numpy version with the
same signature. The numba path is used unless numba is missing or the
environment variable ``LIESUPER_DISABLE_NUMBA`` is set to a truthy value.
All inputs are int64 arrays with entries already reduced mod p.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_DISABLED = os.environ.get("LIESUPER_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")
USE_NUMBA = HAVE_NUMBA and not _DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def inv_mod_numpy(a: np.ndarray, p: int) -> np.ndarray:
    """Elementwise inverse mod p by Fermat exponentiation; a must be nonzero."""
    a = np.mod(np.asarray(a, dtype=np.int64), p)
    result = np.ones_like(a)
    base = a.copy()
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_mod_p_numpy(a: np.ndarray, p: int):
    A = np.mod(np.array(a, dtype=np.int64, copy=True), p)
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r])) % p
        pivots.append(c)
        r += 1
    return A, np.array(pivots, dtype=np.int64)


def batch_rank_mod_p_numpy(stack: np.ndarray, p: int) -> np.ndarray:
    A = np.mod(np.array(stack, dtype=np.int64, copy=True), p)
    N, r, c = A.shape
    rank = np.zeros(N, dtype=np.int64)
    if N == 0 or r == 0 or c == 0:
        return rank
    rows = np.arange(r)
    for col in range(c):
        cand = (A[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        pr = np.argmax(cand[idx], axis=1)
        tr = rank[idx]
        tmp = A[idx, tr].copy()
        A[idx, tr] = A[idx, pr]
        A[idx, pr] = tmp
        prow = A[idx, tr] * inv_mod_numpy(A[idx, tr, col], p)[:, None] % p
        A[idx, tr] = prow
        factors = A[idx, :, col] * (rows[None, :] > tr[:, None])
        A[idx] = (A[idx] - factors[:, :, None] * prow[:, None, :]) % p
        rank[idx] += 1
    return rank


def batch_hom_mask_numpy(cs, ct, maps, pairs, p):
    """For each candidate matrix G (target x source), test G[e_s, e_t] == [G e_s, G e_t]."""
    N = maps.shape[0]
    if N == 0 or pairs.shape[0] == 0:
        return np.ones(N, dtype=np.bool_)
    s = pairs[:, 0]
    t = pairs[:, 1]
    cs_sub = cs[s, t]  # (P, n)
    lhs = np.einsum("pk,nak->npa", cs_sub, maps) % p
    gs = maps[:, :, s].transpose(0, 2, 1)  # (N, P, m)
    gt = maps[:, :, t].transpose(0, 2, 1)
    tmp = np.einsum("npa,abk->npbk", gs, ct) % p
    rhs = np.einsum("npb,npbk->npk", gt, tmp) % p
    return np.all(lhs == rhs, axis=(1, 2))


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _pow_mod(a, e, p):
        result = 1
        base = a % p
        while e > 0:
            if e & 1:
                result = result * base % p
            base = base * base % p
            e >>= 1
        return result

    @njit(cache=True)
    def _rref_inplace(A, p):
        nrows, ncols = A.shape
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    tmp = A[r, j]
                    A[r, j] = A[piv, j]
                    A[piv, j] = tmp
            inv = _pow_mod(A[r, c], p - 2, p)
            for j in range(ncols):
                A[r, j] = A[r, j] * inv % p
            for i in range(nrows):
                if i != r and A[i, c] != 0:
                    f = A[i, c]
                    for j in range(ncols):
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
            pivots[r] = c
            r += 1
        return pivots[:r]

    @njit(cache=True)
    def _rref_numba(a, p):
        A = a.copy()
        for i in range(A.shape[0]):
            for j in range(A.shape[1]):
                A[i, j] = A[i, j] % p
        piv = _rref_inplace(A, p)
        return A, piv

    @njit(cache=True)
    def _rank_inplace(A, p):
        nrows, ncols = A.shape
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, ncols):
                    tmp = A[r, j]
                    A[r, j] = A[piv, j]
                    A[piv, j] = tmp
            inv = _pow_mod(A[r, c], p - 2, p)
            for i in range(r + 1, nrows):
                if A[i, c] != 0:
                    f = A[i, c] * inv % p
                    for j in range(c, ncols):
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
            r += 1
        return r

    @njit(cache=True)
    def _batch_rank_numba(stack, p):
        N = stack.shape[0]
        out = np.zeros(N, dtype=np.int64)
        for n in range(N):
            A = stack[n].copy()
            for i in range(A.shape[0]):
                for j in range(A.shape[1]):
                    A[i, j] = A[i, j] % p
            out[n] = _rank_inplace(A, p)
        return out

    @njit(cache=True)
    def _batch_hom_mask_numba(cs, ct, maps, pairs, p):
        N, m, n = maps.shape
        P = pairs.shape[0]
        out = np.ones(N, dtype=np.bool_)
        lhs = np.zeros(m, dtype=np.int64)
        rhs = np.zeros(m, dtype=np.int64)
        for c in range(N):
            G = maps[c]
            ok = True
            for q in range(P):
                s = pairs[q, 0]
                t = pairs[q, 1]
                for a in range(m):
                    acc = 0
                    for k in range(n):
                        if cs[s, t, k] != 0:
                            acc += cs[s, t, k] * G[a, k]
                    lhs[a] = acc % p
                for k in range(m):
                    rhs[k] = 0
                for a in range(m):
                    ga = G[a, s]
                    if ga == 0:
                        continue
                    for b in range(m):
                        gb = G[b, t]
                        if gb == 0:
                            continue
                        w = ga * gb % p
                        for k in range(m):
                            if ct[a, b, k] != 0:
                                rhs[k] += w * ct[a, b, k]
                for k in range(m):
                    if lhs[k] != rhs[k] % p:
                        ok = False
                        break
                if not ok:
                    break
            out[c] = ok
        return out


def rref_mod_p_numba(a, p):
    A, piv = _rref_numba(np.ascontiguousarray(a, dtype=np.int64), np.int64(p))
    return A, piv


def batch_rank_mod_p_numba(stack, p):
    return _batch_rank_numba(np.ascontiguousarray(stack, dtype=np.int64), np.int64(p))


def batch_hom_mask_numba(cs, ct, maps, pairs, p):
    return _batch_hom_mask_numba(
        np.ascontiguousarray(cs, dtype=np.int64),
        np.ascontiguousarray(ct, dtype=np.int64),
        np.ascontiguousarray(maps, dtype=np.int64),
        np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 2),
        np.int64(p),
    )


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def rref_mod_p(a: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns ``(R, pivot_columns)``."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return a.reshape(a.shape).copy(), np.zeros(0, dtype=np.int64)
    if USE_NUMBA:
        return rref_mod_p_numba(a, p)
    return rref_mod_p_numpy(a, p)


def batch_rank_mod_p(stack: np.ndarray, p: int) -> np.ndarray:
    """Rank mod p of every matrix in a ``(N, r, c)`` stack."""
    stack = np.asarray(stack, dtype=np.int64)
    if stack.shape[0] == 0 or stack.shape[1] == 0 or stack.shape[2] == 0:
        return np.zeros(stack.shape[0], dtype=np.int64)
    if USE_NUMBA:
        return batch_rank_mod_p_numba(stack, p)
    return batch_rank_mod_p_numpy(stack, p)


def batch_hom_mask(cs, ct, maps, pairs, p) -> np.ndarray:
    """Mask of candidate maps that preserve the brackets of the listed basis pairs."""
    maps = np.asarray(maps, dtype=np.int64)
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if maps.shape[0] == 0 or pairs.shape[0] == 0:
        return np.ones(maps.shape[0], dtype=np.bool_)
    if USE_NUMBA:
        return batch_hom_mask_numba(cs, ct, maps, pairs, p)
    return batch_hom_mask_numpy(
        np.asarray(cs, dtype=np.int64), np.asarray(ct, dtype=np.int64), maps, pairs, p
    )
