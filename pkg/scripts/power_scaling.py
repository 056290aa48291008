#!/usr/bin/env python3
"""Empirical cost of the power search: median/max smallest-n over random
targets as the tolerance shrinks, printed as CSV with a fitted slope.

Usage: python scripts/power_scaling.py [--seed N] [--trials K]
"""
import argparse
import sys

import numpy as np

from unigate import DEFAULT_BASE, scaling_study


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--trials", type=int, default=50)
    args = ap.parse_args()

    eps_list = [0.2, 0.1, 0.05, 0.025]
    rows = scaling_study(DEFAULT_BASE, eps_list, trials=args.trials, seed=args.seed)
    print("eps,median_n,max_n,max_err,all_met")
    for r in rows:
        print(f"{r.eps},{r.median_n},{r.max_n},{r.max_err!r},{r.all_met}")
    slope = np.polyfit(np.log(eps_list), np.log([r.median_n for r in rows]), 1)[0]
    print(f"# log-log slope of median n vs eps: {slope:.3f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
