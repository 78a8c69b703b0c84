"""Compare the numba and pure-numpy GF(p) kernels, plus an end-to-end isoclinism search.

Run with ``python3 benchmarks/bench_kernels.py``. The end-to-end timings are
taken in subprocesses so the backend is chosen by ``LIESUPER_DISABLE_NUMBA``
exactly as in normal use.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from liesuper import GF, by_name
from liesuper import _kernels as K


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def row(name, t_numpy, t_numba):
    print(f"{name:<40} numpy {t_numpy * 1e3:9.2f} ms   numba {t_numba * 1e3:9.2f} ms   x{t_numpy / t_numba:6.1f}")


E2E = (
    "import time; from liesuper import GF, by_name, decide_isoclinic; F = GF(7); "
    "a, b = by_name('Hev+A(0|1)', F), by_name('Hev+A(1|1)', F); "
    "decide_isoclinic(a, b, exhaustive=True); t = time.perf_counter(); "
    "d = decide_isoclinic(by_name('Hodd+A(1|1)', F), by_name('Hodd+A(2|1)', F), exhaustive=True); "
    "decide_isoclinic(a, b, exhaustive=True); print(time.perf_counter() - t, d.verdict)"
)


def end_to_end(disable):
    env = dict(os.environ)
    if disable:
        env["LIESUPER_DISABLE_NUMBA"] = "1"
    else:
        env.pop("LIESUPER_DISABLE_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", E2E], env=env, capture_output=True, text=True, check=True)
    secs, verdict = out.stdout.split()
    return float(secs), verdict


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=20_000)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        sys.exit("numba is not installed")

    rng = np.random.default_rng(0)
    p = 7

    a = rng.integers(0, p, size=(60, 80))
    K.rref_mod_p_numba(a, p)  # compile
    row("rref 60x80", best_of(lambda: K.rref_mod_p_numpy(a, p), args.repeat),
        best_of(lambda: K.rref_mod_p_numba(a, p), args.repeat))

    stack = rng.integers(0, p, size=(args.batch, 4, 5))
    K.batch_rank_mod_p_numba(stack[:2], p)
    row(f"batch rank {args.batch} x 4x5", best_of(lambda: K.batch_rank_mod_p_numpy(stack, p), args.repeat),
        best_of(lambda: K.batch_rank_mod_p_numba(stack, p), args.repeat))

    L = by_name("Hev+A(0|1)", GF(p))
    c = np.asarray(L.constants, dtype=np.int64)
    maps = rng.integers(0, p, size=(args.batch, L.n, L.n))
    pairs = np.array([(i, j) for i in range(L.n) for j in range(i, L.n)])
    K.batch_hom_mask_numba(c, c, maps[:2], pairs, p)
    row(f"batch hom mask {args.batch} maps", best_of(lambda: K.batch_hom_mask_numpy(c, c, maps, pairs, p), args.repeat),
        best_of(lambda: K.batch_hom_mask_numba(c, c, maps, pairs, p), args.repeat))

    if not args.skip_e2e:
        t_np, v_np = end_to_end(True)
        t_nb, v_nb = end_to_end(False)
        assert v_np == v_nb, (v_np, v_nb)
        row(f"isoclinism search GF({p}) ({v_nb})", t_np, t_nb)


if __name__ == "__main__":
    main()
