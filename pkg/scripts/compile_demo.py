#!/usr/bin/env python3
"""Run the end-to-end lowering onto replicas of the default fixed gate and
print the gate-count/accuracy report for a range of stage tolerances.

Usage: python scripts/compile_demo.py [--theta T] [--eps E1,E2,...]
"""
import argparse
import sys

from unigate import DEFAULT_BASE, compile_d


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, default=0.9)
    ap.add_argument("--eps", default="0.6,0.3,0.15")
    args = ap.parse_args()

    print("stage_eps,rz_n,vperp_n,total_a_count,final_distance")
    for eps in (float(tok) for tok in args.eps.split(",")):
        r = compile_d(DEFAULT_BASE, args.theta, eps)
        print(f"{eps},{r.rz_n},{r.vperp_n},{r.total_a_count},{r.final_distance!r}")
        for st in r.per_stage:
            print(f"#   {st.name}: {st.a_count} gates, stage distance {st.distance:.4f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
