"""Compare the numba and numpy kernel backends.

Times the induced-path counting kernel (the pivot search inner loop) and the
longest-induced-path kernel on generated P_t-free graphs, checks that both
backends agree, and prints one JSON line per case.

    python3 benchmarks/bench_backends.py [--sizes 10 14 18] [--repeat 5]
"""

import argparse
import json
import timeit

import numpy as np

from qpbranch import generators, kernels


def time_ms(f, repeat):
    f()  # warm start, includes numba compilation
    return 1000.0 * timeit.timeit(f, number=repeat) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 14, 18])
    ap.add_argument("--t", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    for n in args.sizes:
        G = generators.generate_instance("random-gnp-rejection", args.seed, n, t=args.t)
        adj = kernels.local_adjacency(G.adj, list(range(n)))
        s1, h1 = kernels.path_counts(adj, args.t - 1, "numba")
        s2, h2 = kernels.path_counts(adj, args.t - 1, "numpy")
        agree = bool(np.array_equal(s1, s2) and np.array_equal(h1, h2))
        agree &= kernels.longest_induced_path(adj, None, "numba") == kernels.longest_induced_path(adj, None, "numpy")
        row = {"n": n, "m": G.m, "t": args.t, "agree": agree}
        for name in ("numba", "numpy"):
            row[f"pathCounts_{name}_ms"] = round(time_ms(lambda: kernels.path_counts(adj, args.t - 1, name),
                                                         args.repeat), 3)
            row[f"longestPath_{name}_ms"] = round(time_ms(lambda: kernels.longest_induced_path(adj, None, name),
                                                          args.repeat), 3)
        row["speedup"] = round(row["pathCounts_numpy_ms"] / max(row["pathCounts_numba_ms"], 1e-9), 2)
        print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
