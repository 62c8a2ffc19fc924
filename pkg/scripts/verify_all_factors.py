#!/usr/bin/env python3
"""Sweep the identity-verification suites over the standard factor list."""

import argparse
import sys
import time

from symdom import factors as F
from symdom.verify import run_verification

FACTORS = {
    "rect(2,2)": F.rectangular(2, 2),
    "rect(2,3)": F.rectangular(2, 3),
    "spin(4)": F.spin(4),
    "spin(5)": F.spin(5),
    "hilbert(3)": F.hilbert(3),
    "polydisc(3)": F.polydisc(3),
    "rect(2,2)+hilbert(2)": F.direct_sum([F.rectangular(2, 2), F.hilbert(2)]),
}


def run(trials: int, seed: int) -> int:
    failures = 0
    for name, factor in FACTORS.items():
        t0 = time.time()
        results = run_verification(factor, trials=trials, seed=seed)
        bad = [r for r in results if not r.passed]
        failures += len(bad)
        status = "ok" if not bad else f"{len(bad)} FAILED"
        print(f"{name:<22} {len(results)} suites  {status}  ({time.time() - t0:.1f}s)")
        for r in bad:
            print(f"    {r.name}: max_residual={r.max_residual:.3e} tol={r.tolerance:.1e}")
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sys.exit(run(args.trials, args.seed))
