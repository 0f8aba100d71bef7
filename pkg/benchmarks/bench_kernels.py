"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat R]

Times the neighborhood-weight kernel on random weighted tournaments and the
median-order subset DP at several sizes, checks both backends agree, and
prints a table. Compilation happens once before timing.
"""

import argparse
import sys
import timeit

import numpy as np

from arcseymour import kernels
from arcseymour._accel import HAVE_NUMBA
from arcseymour.harness import generate_tournament


def instance(n, seed):
    T = generate_tournament(n, "int:9", seed)
    W, _ = T.scaled_weights
    return T.presence_matrix, W


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba backend unavailable (ARCSEYMOUR_BACKEND=numpy or numba missing)")
        return 1

    P, W = instance(5, 0)
    kernels.beta_numba(P, W)
    kernels.median_numba(W)

    rows = []
    for n in (8, 32, 128, 256):
        P, W = instance(n, n)
        a, b = kernels.beta_numba(P, W), kernels.beta_numpy(P, W)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))
        rows.append(("beta", n,
                     best_of(lambda: kernels.beta_numba(P, W), args.repeat),
                     best_of(lambda: kernels.beta_numpy(P, W), args.repeat)))
    for n in (10, 14, 17, 20):
        _, W = instance(n, n)
        a, b = kernels.median_numba(W), kernels.median_numpy(W)
        assert np.array_equal(a[0], b[0]) and a[1] == b[1]
        rep = max(1, args.repeat // 2) if n >= 17 else args.repeat
        rows.append(("median", n,
                     best_of(lambda: kernels.median_numba(W), rep),
                     best_of(lambda: kernels.median_numpy(W), rep)))

    print(f"{'kernel':<8}{'n':>5}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for name, n, tn, tp in rows:
        print(f"{name:<8}{n:>5}{tn * 1e3:>12.3f}{tp * 1e3:>12.3f}{tp / tn:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
