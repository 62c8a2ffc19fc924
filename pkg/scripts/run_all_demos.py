#!/usr/bin/env python3
"""Run every named demo scenario and collect its outputs under out/demos/.

Each demo writes config.json, report.json, per-start orbit CSVs, and a
horoball grid CSV; these are the inputs the plot renderer consumes.
"""

import argparse
import sys
import time

from symdom.cli import main as cli_main
from symdom.demos import DEMO_NAMES


def run(outdir: str, seed: int) -> int:
    worst = 0
    for name in DEMO_NAMES:
        t0 = time.time()
        code = cli_main(["demo", name, "--out", f"{outdir}/{name}", "--seed", str(seed)])
        print(f"  [{name}] exit {code} in {time.time() - t0:.1f}s")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/demos")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sys.exit(run(args.out, args.seed))
