"""Calibrate the constant B in  maxSuccessPerPath <= B * (1 + log2 n)^2.

Runs the pruned solver in P_t-free mode on a fixed seed corpus (n = 8..20)
and reports the largest observed ratio.  The suggested B doubles that ratio
and rounds up to a multiple of 0.05; the acceptance test freezes the value.

    python3 benchmarks/calibrate_success_bound.py --out calibration.json
"""

from __future__ import annotations

import argparse
import json
import math
import time

from qpbranch.generators import generate_instance
from qpbranch.solver import SolverConfig, solve_max_degenerate

CORPUS_SEED = 7000


def corpus(seeds: int):
    for d in (0, 1):
        for n in range(8, 21):
            for s in range(seeds):
                yield d, n, CORPUS_SEED + 1000 * d + 50 * n + s


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=3, help="instances per (d, n)")
    ap.add_argument("--t", type=int, default=6)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rows = []
    for d, n, seed in corpus(args.seeds):
        G = generate_instance("random-gnp-rejection", seed=seed, n=n, t=args.t, weights=(1, 100))
        t0 = time.perf_counter()
        r = solve_max_degenerate(G, d, args.t, "pt", SolverConfig())
        s = r.stats
        ratio = s.max_success_per_path / (1 + math.log2(n)) ** 2
        rows.append({"d": d, "n": n, "seed": seed, "maxSuccessPerPath": s.max_success_per_path,
                     "maxSplitPerPath": s.max_split_per_path, "rootLevel": s.root_level,
                     "ratio": round(ratio, 4), "elapsedMs": round((time.perf_counter() - t0) * 1000, 1)})
        print(json.dumps(rows[-1], sort_keys=True), flush=True)
    worst = max(r["ratio"] for r in rows)
    suggested = math.ceil(2 * worst / 0.05) * 0.05
    summary = {"instances": len(rows), "maxRatio": worst, "suggestedB": round(suggested, 2), "rows": rows}
    print(json.dumps({k: v for k, v in summary.items() if k != "rows"}, sort_keys=True))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, sort_keys=True, indent=1)


if __name__ == "__main__":
    main()
