"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--sizes 64,128,256] [--repeat 5]

The numba path is warmed up once before timing, so compile time is excluded.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from iquantum import _kernels as K


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,128,256")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(7)
    p, z = K.prime_with_root(9)
    zeta_pows = np.array([pow(z, k, p) for k in range(9)], dtype=np.int64)
    print(f"backend: {K.backend()}  prime: {p}")
    if not K.HAVE_NUMBA:
        print("numba unavailable (or disabled); only the numpy timings are meaningful")
    print(f"{'kernel':<12}{'size':>6}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for n in sizes:
        mat = rng.integers(0, p, size=(n, n), dtype=np.int64)
        assert K.rank_mod_p(mat, p) == K.rank_mod_p_numpy(mat, p)
        t_np = _best(lambda: K.rank_mod_p_numpy(mat, p), args.repeat)
        t_nb = _best(lambda: K.rank_mod_p(mat, p), args.repeat)
        print(f"{'rank_mod_p':<12}{n:>6}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>10.1f}")
    for d in sizes:
        k = 4 * d
        perms = np.array([rng.permutation(d) for _ in range(k)], dtype=np.int64)
        phases = rng.integers(0, 9, size=(k, d), dtype=np.int64)
        assert np.array_equal(K.dense_rows_mod_p(perms, phases, zeta_pows), K.dense_rows_mod_p_numpy(perms, phases, zeta_pows))
        t_np = _best(lambda: K.dense_rows_mod_p_numpy(perms, phases, zeta_pows), args.repeat)
        t_nb = _best(lambda: K.dense_rows_mod_p(perms, phases, zeta_pows), args.repeat)
        print(f"{'dense_rows':<12}{d:>6}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
