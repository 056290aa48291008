"""Gate powers on the angle torus and the search for a power hitting a target.

Repeated application of the gate multiplies the conditional-phase and
rotation angles: the n-th power of the gate at (phi, alpha, theta) is the
gate at (phi, n*alpha mod 2*pi, n*theta mod 2*pi).  When (alpha/2*pi,
theta/2*pi, 1) are rationally independent the pair (n*alpha, n*theta)
equidistributes on the 2-torus, so some finite power lands within any
tolerance of any requested (alpha1, theta1).  ``find_power`` locates the
smallest such power by exhaustive ascending scan.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gates import GateParams
from .matcore import TAU, reduce_angle

_TAU_FRAC = Fraction(TAU)

# Default base angles: 2*pi times (1/rho, 1/rho^2) with rho the real root of
# x^3 = x + 1.  rho is a cubic irrational, so 1, 1/rho, 1/rho^2 are rationally
# independent and the powers of the base gate fill the whole angle torus; the
# pair is the standard 2-torus analogue of the golden rotation.  (The golden
# conjugate g and its square do NOT work here: g + g^2 = 1 pins every power to
# a single line of the torus.)
PLASTIC = 1.3247179572447460260
DEFAULT_BASE = GateParams(1.0, TAU / PLASTIC, TAU / PLASTIC**2)


@dataclass(frozen=True)
class ApproxQuery:
    """Target angles and tolerance for the power search."""

    base: GateParams
    target_alpha: float
    target_theta: float
    eps: float
    n_max: int = 10**6

    def __post_init__(self):
        object.__setattr__(self, "target_alpha", reduce_angle(float(self.target_alpha)))
        object.__setattr__(self, "target_theta", reduce_angle(float(self.target_theta)))
        if not (self.eps > 0.0):
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be at least 1, got {self.n_max}")


@dataclass(frozen=True)
class ApproxResult:
    n: int
    achieved_alpha: float
    achieved_theta: float
    err: float
    met: bool


@dataclass(frozen=True)
class ScalingRow:
    """One tolerance level of a scaling study."""

    eps: float
    median_n: float
    max_n: int
    max_err: float
    all_met: bool


def _mult_angle(angle: float, n: int) -> float:
    # Exact reduction of n*angle modulo the float64 value of 2*pi: the
    # product is formed in rational arithmetic so no precision is lost even
    # for very large n; only the final conversion rounds.
    return float((n * Fraction(angle)) % _TAU_FRAC)


def power_params(p: GateParams, n: int) -> GateParams:
    """Parameters of the n-th power: (phi, n*alpha mod 2*pi, n*theta mod 2*pi)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return GateParams(p.phi, _mult_angle(p.alpha, n), _mult_angle(p.theta, n))


def inverse_params(p: GateParams) -> GateParams:
    """Parameters of the inverse gate: (phi, 2*pi - alpha, 2*pi - theta)."""
    return GateParams(p.phi, TAU - p.alpha, TAU - p.theta)


def torus_dist(x, y):
    """Shortest angular distance |x - y| on the circle of circumference 2*pi.

    Accepts scalars or numpy arrays; the result lies in [0, pi].
    """
    d = np.abs(np.asarray(x) - np.asarray(y)) % TAU
    out = np.minimum(d, TAU - d)
    return float(out) if out.ndim == 0 else out


_CHUNK = 1 << 16


def _exact_err(q: ApproxQuery, n: int) -> tuple[float, float, float]:
    a = _mult_angle(q.base.alpha, n)
    t = _mult_angle(q.base.theta, n)
    return a, t, max(torus_dist(a, q.target_alpha), torus_dist(t, q.target_theta))


def find_power(q: ApproxQuery) -> ApproxResult:
    """Smallest n in 1..n_max whose power lands within eps of both targets.

    Scans ascending and returns the first n with
    max(torus_dist(n*alpha, target_alpha), torus_dist(n*theta, target_theta)) <= eps,
    or the best n found when none qualifies (met=False).  The reported err is
    recomputed from the exact angle reduction, independent of the scan.
    """
    alpha, theta = q.base.alpha, q.base.theta
    best_n, best_err = 1, math.inf
    n0 = 1
    while n0 <= q.n_max:
        n1 = min(n0 + _CHUNK, q.n_max + 1)
        ns = np.arange(n0, n1, dtype=np.float64)
        err = np.maximum(
            torus_dist(ns * alpha % TAU, q.target_alpha),
            torus_dist(ns * theta % TAU, q.target_theta),
        )
        # The vectorized reduction of n*angle is good to ~n*2^-52 radians;
        # scan with that margin and confirm candidates exactly.
        margin = n1 * max(alpha, theta, 1.0) * 2.0**-50
        for i in np.nonzero(err <= q.eps + margin)[0]:
            n = n0 + int(i)
            a, t, e = _exact_err(q, n)
            if e <= q.eps:
                return ApproxResult(n, a, t, e, True)
        i = int(np.argmin(err))
        if err[i] < best_err:
            best_err = float(err[i])
            best_n = n0 + i
        n0 = n1
    a, t, e = _exact_err(q, best_n)
    return ApproxResult(best_n, a, t, e, False)


def scaling_study(
    base: GateParams,
    eps_list: list[float],
    trials: int,
    seed: int,
    n_max: int = 10**6,
) -> list[ScalingRow]:
    """Median and max smallest-n over random targets, per tolerance level.

    The same ``trials`` targets, drawn uniformly from [0, 2*pi)^2 with the
    given seed, are searched at every eps; rows come back in eps_list order.
    """
    if not eps_list:
        raise ValueError("eps_list must be nonempty")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    targets = rng.uniform(0.0, TAU, size=(trials, 2))
    rows = []
    for eps in eps_list:
        ns, errs, met_all = [], [], True
        for ta, tt in targets:
            r = find_power(ApproxQuery(base, float(ta), float(tt), eps, n_max))
            ns.append(r.n)
            errs.append(r.err)
            met_all = met_all and r.met
        rows.append(ScalingRow(eps, float(statistics.median(ns)), max(ns), max(errs), met_all))
    return rows
