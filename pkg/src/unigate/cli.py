"""Command-line front end: verification suite, netlist evaluation, power
search, convergence studies, and end-to-end compilation.

Structured results are printed as JSON on stdout, series data as CSV.
Exit code 0 means the command's contract was met: verify => every check
passed, approx => the tolerance was met, compose/converge/compile-d =>
the run completed.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .approx import ApproxQuery, find_power, inverse_params, power_params
from .gates import GateParams, a_matrix, d_matrix, p_matrix, q_matrix, v_matrix
from .matcore import basis_state, mat_power, phase_dist
from .netdsl import ParseError, parse, run
from .synth import (
    CompileError,
    build_d_exact,
    build_q,
    build_t,
    compile_d,
    convergence_study,
    eval_network,
    lower_v,
    lower_vbar,
    t_generator,
)

_T_BETAS = (0.1, 0.05, 0.025)


def _verify_checks(seed: int, trials: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    checks = []

    def record(name, tolerance, draws, distances):
        worst = max(distances)
        checks.append(
            {
                "name": name,
                "tolerance": tolerance,
                "distance": worst,
                "pass": bool(worst <= tolerance),
                "draws": draws,
            }
        )

    # inverse law: the inverse-parameter gate undoes the gate exactly
    draws, dists = [], []
    for _ in range(trials):
        p = GateParams(*rng.uniform(0.0, 2 * math.pi, 3))
        draws.append({"phi": p.phi, "alpha": p.alpha, "theta": p.theta})
        dists.append(float(np.linalg.norm(a_matrix(inverse_params(p)) @ a_matrix(p) - np.eye(4))))
    record("inverse_identity", 1e-12, draws, dists)

    # power law: closed-form n-th power against literal repetition
    draws, dists = [], []
    for _ in range(trials):
        p = GateParams(*rng.uniform(0.0, 2 * math.pi, 3))
        n = int(rng.choice([1, 10, 100, 1000]))
        draws.append({"phi": p.phi, "alpha": p.alpha, "theta": p.theta, "n": n})
        dists.append(phase_dist(a_matrix(power_params(p, n)), mat_power(a_matrix(p), n)))
    record("power_law", 1e-8, draws, dists)

    # five-gate network realizes the doubly-controlled gate exactly
    draws, dists = [], []
    for _ in range(trials):
        p = GateParams(*rng.uniform(0.0, 2 * math.pi, 3))
        draws.append({"phi": p.phi, "alpha": p.alpha, "theta": p.theta})
        dists.append(phase_dist(eval_network(lower_v(p), "lowered"), v_matrix(p)))
    record("v_from_five", 1e-12, draws, dists)

    # exchange-gate constructions
    draws, dists = [], []
    for _ in range(trials):
        phi = float(rng.uniform(0.0, 2 * math.pi))
        draws.append({"phi": phi})
        net = lower_vbar(GateParams(phi, math.pi / 2, math.pi / 2))
        dists.append(phase_dist(eval_network(net, "lowered"), p_matrix(phi)))
    record("p_construction", 1e-12, draws, dists)

    draws, dists = [], []
    for _ in range(trials):
        phi = float(rng.uniform(0.0, 2 * math.pi))
        draws.append({"phi": phi})
        dists.append(phase_dist(eval_network(build_q(phi), "lowered"), q_matrix()))
    record("q_construction", 1e-12, draws, dists)

    # second-order expansion of the T sandwich: residual bounded by 1.5*beta^3
    draws, ratios = [], []
    for _ in range(trials):
        phi = float(rng.uniform(0.0, 2 * math.pi))
        draws.append({"phi": phi, "betas": list(_T_BETAS)})
        g = t_generator(phi)
        worst = 0.0
        for beta in _T_BETAS:
            resid = float(
                np.linalg.norm(
                    eval_network(build_t(phi, beta)) - (np.eye(8) - 1j * beta**2 * g)
                )
            )
            worst = max(worst, resid / beta**3)
        ratios.append(worst)
    record("t_second_order", 1.5, draws, ratios)

    # exact-rotation assembly of the target three-qubit gate
    draws, dists = [], []
    for _ in range(trials):
        phi, theta = (float(x) for x in rng.uniform(0.0, 2 * math.pi, 2))
        draws.append({"phi": phi, "theta": theta})
        dists.append(phase_dist(eval_network(build_d_exact(phi, theta)), d_matrix(theta)))
    record("d_assembly", 1e-12, draws, dists)

    return checks


def _cmd_verify(args) -> int:
    if args.trials < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return 2
    checks = _verify_checks(args.seed, args.trials)
    overall = all(c["pass"] for c in checks)
    report = {
        "tool": "unigate",
        "version": __version__,
        "seed": args.seed,
        "trials": args.trials,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "checks": checks,
        "pass": overall,
    }
    print(json.dumps(report, indent=2))
    return 0 if overall else 1


def _complex_pairs(a: np.ndarray):
    if a.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in a]
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def _cmd_compose(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        doc = parse(text)
    except ParseError as exc:
        print(f"error: {args.file}:{exc.line}:{exc.column}: {exc.kind.value}: {exc.message}", file=sys.stderr)
        return 1
    if args.input is not None:
        if len(args.input) != doc.width or any(c not in "01" for c in args.input):
            print(f"error: --input must be {doc.width} bits of 0/1, got {args.input!r}", file=sys.stderr)
            return 1
        state = run(doc, basis_state(args.input))
        out = {"width": doc.width, "input": args.input, "state": _complex_pairs(state)}
    else:
        out = {"width": doc.width, "matrix": _complex_pairs(run(doc))}
    print(json.dumps(out))
    return 0


def _cmd_approx(args) -> int:
    try:
        query = ApproxQuery(
            GateParams(args.phi, args.alpha, args.theta),
            args.target_alpha,
            args.target_theta,
            args.eps,
            args.n_max,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    r = find_power(query)
    print(
        json.dumps(
            {
                "n": r.n,
                "achieved_alpha": r.achieved_alpha,
                "achieved_theta": r.achieved_theta,
                "err": r.err,
                "met": r.met,
            }
        )
    )
    return 0 if r.met else 1


def _cmd_converge(args) -> int:
    try:
        n_list = [int(tok) for tok in args.n.split(",") if tok]
    except ValueError:
        print(f"error: --n must be a comma-separated integer list, got {args.n!r}", file=sys.stderr)
        return 2
    params = {"phi": args.phi}
    if args.construction == "d":
        if args.theta is None:
            print("error: construction 'd' needs --theta", file=sys.stderr)
            return 2
        params["theta"] = args.theta
    else:
        if args.beta is None:
            print(f"error: construction {args.construction!r} needs --beta", file=sys.stderr)
            return 2
        params["beta"] = args.beta
    name = {"t": "T_ORDER", "vperp": "VPERP", "rz": "RZ", "d": "D"}[args.construction]
    try:
        samples = convergence_study(name, params, n_list)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("n,distance")
    for s in samples:
        print(f"{s.n},{s.distance!r}")
    return 0


def _cmd_compile_d(args) -> int:
    try:
        report = compile_d(
            GateParams(args.phi, args.alpha, args.theta),
            args.target_theta,
            args.stage_eps,
            n_max=args.n_max,
        )
    except (ValueError, CompileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = {
        "total_a_count": report.total_a_count,
        "per_stage": [
            {"name": st.name, "a_count": st.a_count, "distance": st.distance}
            for st in report.per_stage
        ],
        "final_distance": report.final_distance,
        "stage_eps": report.stage_eps,
        "rz_n": report.rz_n,
        "vperp_n": report.vperp_n,
        "power_table": [
            {"alpha1": a, "theta1": t, "n": n} for (a, t), n in report.power_table
        ],
    }
    print(json.dumps(out, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unigate", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the randomized identity suite, print a JSON report")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("compose", help="evaluate a .unet netlist to a matrix or state")
    p.add_argument("file")
    p.add_argument("--input", help="initial basis state as a bit string, e.g. 110")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("approx", help="search for a gate power hitting target angles")
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--target-alpha", type=float, required=True)
    p.add_argument("--target-theta", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n-max", type=int, default=10**6)
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("converge", help="distance-vs-n series for one construction, as CSV")
    p.add_argument("--construction", choices=["t", "vperp", "rz", "d"], required=True)
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--beta", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--n", required=True, help="comma-separated ascending list, e.g. 4,16,64")
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("compile-d", help="lower the three-qubit target onto one fixed gate")
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--target-theta", type=float, required=True)
    p.add_argument("--stage-eps", type=float, required=True)
    p.add_argument("--n-max", type=int, default=10**6)
    p.set_defaults(func=_cmd_compile_d)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
