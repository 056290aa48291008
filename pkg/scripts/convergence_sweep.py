#!/usr/bin/env python3
"""Sweep the truncation level of each approximate construction and write
distance-vs-n CSV files (one per construction) into out/.

Usage: python scripts/convergence_sweep.py [outdir]
"""
import sys
from pathlib import Path

from unigate import convergence_study

SWEEPS = {
    "t_order": ("T_ORDER", {"phi": 1.0, "beta": 0.5}, [1, 2, 4, 8, 16, 32]),
    "vperp": ("VPERP", {"phi": 1.0, "beta": 0.5}, [4, 16, 64, 256, 1024, 4096]),
    "rz": ("RZ", {"phi": 1.0, "beta": 0.7}, [1, 4, 16, 64, 256, 1024, 8192]),
    "d": ("D", {"phi": 1.0, "theta": 0.9}, [4, 16, 64, 256, 1024, 8192]),
}


def main() -> int:
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "out")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, (builder, params, n_list) in SWEEPS.items():
        samples = convergence_study(builder, params, n_list)
        path = outdir / f"convergence_{name}.csv"
        with path.open("w") as fh:
            fh.write("n,distance\n")
            for s in samples:
                fh.write(f"{s.n},{s.distance!r}\n")
        print(f"{path}: {len(samples)} rows, last distance {samples[-1].distance:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
