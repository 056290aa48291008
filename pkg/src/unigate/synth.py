"""Gate-network builders, evaluation, convergence studies, end-to-end compile.

Networks store operations in chronological order: ops[0] acts first, so the
evaluated matrix is M_k ... M_2 M_1.  Two evaluation modes exist: idealized
mode accepts the composite kinds (V, VBAR, P, Q, RZ) as primitives with
their exact matrices; lowered mode accepts only A and A_INV, i.e. networks
already rewritten onto placements of the single two-qubit gate.

The construction chain built here:
  * five A placements realize the doubly-controlled gate V exactly;
  * V networks at special parameters give the exchange gates P and Q;
  * the ten-gate sandwich T(beta) is, to second order, a conditional
    rotation of angle 2*beta^2 about the in-plane axis at phi - pi/2;
  * powers of T approximate V at the rotated axis, commutator cells of V
    approximate the conditional z rotation, and conjugating V by two such
    z rotations yields the target three-qubit gate d_matrix(theta).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .approx import ApproxQuery, find_power, inverse_params
from .gates import (
    GateParams,
    Placement,
    a_block,
    controlled_embed,
    d_matrix,
    rz_matrix,
    v_matrix,
)
from .matcore import phase_dist


class OpKind(Enum):
    A = "a"
    A_INV = "ainv"
    V = "v"
    VBAR = "vbar"
    P = "p"
    Q = "q"
    RZ = "rz"


COMPOSITE_KINDS = frozenset({OpKind.V, OpKind.VBAR, OpKind.P, OpKind.Q, OpKind.RZ})

_N_CONTROLS = {
    OpKind.A: 1,
    OpKind.A_INV: 1,
    OpKind.V: 2,
    OpKind.VBAR: 2,
    OpKind.P: 2,
    OpKind.Q: 2,
    OpKind.RZ: 2,
}


@dataclass(frozen=True)
class NetOp:
    """One placed gate application.

    ``params`` is a GateParams for A/A_INV/V/VBAR, a plain angle for P
    (its phi) and RZ (its beta), and None for Q.
    """

    kind: OpKind
    placement: Placement
    params: GateParams | float | None = None

    def __post_init__(self):
        if len(self.placement.controls) != _N_CONTROLS[self.kind]:
            raise ValueError(
                f"{self.kind.value} takes {_N_CONTROLS[self.kind]} control(s), "
                f"got {self.placement.controls}"
            )
        if self.kind in (OpKind.A, OpKind.A_INV, OpKind.V, OpKind.VBAR):
            if not isinstance(self.params, GateParams):
                raise ValueError(f"{self.kind.value} needs GateParams, got {self.params!r}")
        elif self.kind is OpKind.Q:
            if self.params is not None:
                raise ValueError("q takes no parameter")
        else:
            if not isinstance(self.params, (int, float)) or isinstance(self.params, bool):
                raise ValueError(f"{self.kind.value} needs one angle, got {self.params!r}")
            object.__setattr__(self, "params", float(self.params))


@dataclass(frozen=True)
class Network:
    """Ordered gate applications on a fixed-width register; ops[0] acts first."""

    width: int
    ops: tuple[NetOp, ...]

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            if op.placement.width != self.width:
                raise ValueError(
                    f"op width {op.placement.width} does not match network width {self.width}"
                )


@dataclass(frozen=True)
class ConvergenceSample:
    n: int
    distance: float


@dataclass(frozen=True)
class CompileStage:
    name: str
    a_count: int
    distance: float


@dataclass(frozen=True)
class CompileReport:
    """Tally of one full lowering onto replicas of a single fixed gate."""

    total_a_count: int
    per_stage: tuple[CompileStage, ...]
    final_distance: float
    stage_eps: float
    rz_n: int
    vperp_n: int
    power_table: tuple[tuple[tuple[float, float], int], ...]


class CompileError(RuntimeError):
    """Raised when some required gate parameters cannot be reached as a power."""


def concat(*nets: Network) -> Network:
    """Chronological concatenation; all networks must share one width."""
    if not nets:
        raise ValueError("need at least one network")
    width = nets[0].width
    ops: list[NetOp] = []
    for net in nets:
        if net.width != width:
            raise ValueError("cannot concat networks of different widths")
        ops.extend(net.ops)
    return Network(width, tuple(ops))


@lru_cache(maxsize=16384)
def op_matrix(op: NetOp) -> np.ndarray:
    """Embedded register-sized matrix of one op."""
    pl = op.placement
    if op.kind is OpKind.A:
        return controlled_embed(a_block(op.params), pl)
    if op.kind is OpKind.A_INV:
        return controlled_embed(a_block(inverse_params(op.params)), pl)
    if op.kind is OpKind.V:
        return controlled_embed(a_block(op.params), pl)
    if op.kind is OpKind.VBAR:
        # V with qubits 2 and 3 of its triple exchanged: controls become
        # (c1, target), target becomes c2.
        c1, c2 = pl.controls
        return controlled_embed(a_block(op.params), Placement((c1, pl.target), c2, pl.width))
    if op.kind is OpKind.P:
        c1, c2 = pl.controls
        block = a_block(GateParams(op.params, math.pi / 2, math.pi / 2))
        return controlled_embed(block, Placement((c1, pl.target), c2, pl.width))
    if op.kind is OpKind.RZ:
        block = np.diag([np.exp(1j * op.params), np.exp(-1j * op.params)])
        return controlled_embed(block, pl)
    # Q: swap the last two qubits of the triple when the first reads 1.
    c1, c2 = pl.controls
    w = pl.width
    b1, b2, bt = (1 << (w - c1)), (1 << (w - c2)), (1 << (w - pl.target))
    dim = 1 << w
    m = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        row = col
        if col & b1:
            hi, lo = bool(col & b2), bool(col & bt)
            row = col & ~(b2 | bt)
            if lo:
                row |= b2
            if hi:
                row |= bt
        m[row, col] = 1.0
    return m


def eval_network(net: Network, mode: str = "idealized") -> np.ndarray:
    """Product of the embedded op matrices, first op applied first.

    mode='idealized' accepts every kind; mode='lowered' rejects composite
    kinds, enforcing that the network uses only the two-qubit gate.
    """
    if mode not in ("idealized", "lowered"):
        raise ValueError(f"unknown mode {mode!r}")
    dim = 1 << net.width
    result = np.eye(dim, dtype=np.complex128)
    for op in net.ops:
        if mode == "lowered" and op.kind in COMPOSITE_KINDS:
            raise ValueError(f"composite op {op.kind.value} not allowed in lowered mode")
        result = op_matrix(op) @ result
    return result


def apply_network(net: Network, state: np.ndarray) -> np.ndarray:
    """Apply the network to a state vector, op by op."""
    state = np.asarray(state, dtype=np.complex128)
    if state.shape != (1 << net.width,):
        raise ValueError(f"state dimension {state.shape} does not match width {net.width}")
    for op in net.ops:
        state = op_matrix(op) @ state
    return state


_TRIPLE = Placement((1, 2), 3, 3)


def _a_op(c: int, t: int, p: GateParams, inv: bool = False) -> NetOp:
    return NetOp(OpKind.A_INV if inv else OpKind.A, Placement((c,), t, 3), p)


def lower_v(p: GateParams) -> Network:
    """Five placements of the two-qubit gate realizing v_matrix(p) exactly.

    Chronological order: A12(phi,pi/2,pi/2), A23^-1(phi,alpha/2,theta/2),
    A12(phi,pi/2,pi/2), A13(phi,alpha/2,theta/2), A23(phi,alpha/2,theta/2).
    The half-angle gate is a square root of the conditioned block; the two
    A12 factors toggle qubit 2 so the root and its inverse cancel unless
    both controls read 1.
    """
    half = GateParams(p.phi, p.alpha / 2.0, p.theta / 2.0)
    quarter = GateParams(p.phi, math.pi / 2, math.pi / 2)
    return Network(
        3,
        (
            _a_op(1, 2, quarter),
            _a_op(2, 3, half, inv=True),
            _a_op(1, 2, quarter),
            _a_op(1, 3, half),
            _a_op(2, 3, half),
        ),
    )


_SWAP23 = {1: 1, 2: 3, 3: 2}


def lower_vbar(p: GateParams) -> Network:
    """lower_v with qubit labels 2 and 3 exchanged; realizes the variant of
    v_matrix with the second and third qubits swapped."""
    ops = []
    for op in lower_v(p).ops:
        (c,) = op.placement.controls
        ops.append(NetOp(op.kind, Placement((_SWAP23[c],), _SWAP23[op.placement.target], 3), op.params))
    return Network(3, tuple(ops))


def build_q(phi: float) -> Network:
    """Fifteen placements realizing q_matrix(); the result is independent of phi."""
    half_swap = GateParams(phi, math.pi / 2, -math.pi / 2)
    return concat(lower_vbar(half_swap), lower_v(half_swap), lower_vbar(half_swap))


def build_t(phi: float, beta: float, lowered: bool = False) -> Network:
    """The ten-op sandwich whose product is, to second order in beta,
    a conditional rotation of angle 2*beta^2 about the axis at phi - pi/2.

    Chronological order: Q, P, V(phi,0,-beta), P, V(phi,0,-beta), P,
    V(phi,0,beta), P, V(phi,0,beta), Q.  With lowered=True every factor is
    replaced by its exact A-network (70 ops total).
    """
    v_pos = GateParams(phi, 0.0, beta)
    v_neg = GateParams(phi, 0.0, -beta)
    if lowered:
        p_net = lower_vbar(GateParams(phi, math.pi / 2, math.pi / 2))
        q_net = build_q(phi)
        return concat(
            q_net,
            p_net, lower_v(v_neg),
            p_net, lower_v(v_neg),
            p_net, lower_v(v_pos),
            p_net, lower_v(v_pos),
            q_net,
        )
    q_op = NetOp(OpKind.Q, _TRIPLE)
    p_op = NetOp(OpKind.P, _TRIPLE, phi)
    vp = NetOp(OpKind.V, _TRIPLE, v_pos)
    vm = NetOp(OpKind.V, _TRIPLE, v_neg)
    return Network(3, (q_op, p_op, vm, p_op, vm, p_op, vp, p_op, vp, q_op))


def t_generator(phi: float) -> np.ndarray:
    """Second-order generator G of build_t: eval(build_t(phi, b)) is
    I - i b^2 G + O(b^3).  Nonzero only on the {|110>, |111>} block."""
    g = np.zeros((8, 8), dtype=np.complex128)
    g[6, 7] = 1j * np.exp(-1j * phi)
    g[7, 6] = -1j * np.exp(1j * phi)
    return g


def _vperp_signed(phi: float, beta: float, n: int, lowered: bool) -> Network:
    # n repetitions of build_t at step +-sqrt(|beta|/n); the sign of beta
    # selects the T variant with the opposite generator.
    step = math.copysign(math.sqrt(abs(beta) / n), beta)
    cell = build_t(phi, step, lowered=lowered)
    return Network(3, cell.ops * n)


def approx_vperp(phi: float, beta: float, n: int, lowered: bool = False) -> Network:
    """n-fold power of build_t(phi, sqrt(beta/n)); converges to
    v_matrix(phi - pi/2, 0, beta) as n grows (observed rate ~ n^-1/2)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if beta < 0.0:
        raise ValueError("beta must be nonnegative; build the negative variant from build_t(phi, -b)")
    return _vperp_signed(phi, beta, n, lowered)


def approx_rz(
    phi: float,
    beta: float,
    n: int,
    lowered: bool = False,
    vperp_n: int | None = None,
) -> Network:
    """n commutator cells approximating rz_matrix(beta).

    Each cell multiplies (right to left) V(phi,0,s) V(phi-pi/2,0,s)
    V(phi,0,-s) V(phi-pi/2,0,-s) with s = sqrt(|beta|/(2n)); to second
    order that is a conditional z rotation by beta/n.  Negative beta uses
    the order-reversed cell, whose leading term has the opposite sign.
    With lowered=True the factors at phi lower exactly and the factors at
    phi - pi/2 are expanded through ``approx_vperp`` with vperp_n cells.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if lowered and (vperp_n is None or vperp_n < 1):
        raise ValueError("lowered mode needs vperp_n >= 1")
    s = math.sqrt(abs(beta) / (2.0 * n))

    def v_op(sign: float) -> tuple[NetOp, ...] | Network:
        p = GateParams(phi, 0.0, sign * s)
        return lower_v(p) if lowered else Network(3, (NetOp(OpKind.V, _TRIPLE, p),))

    def vperp_op(sign: float) -> Network:
        if lowered:
            return _vperp_signed(phi, sign * s, vperp_n, lowered=True)
        p = GateParams(phi - math.pi / 2, 0.0, sign * s)
        return Network(3, (NetOp(OpKind.V, _TRIPLE, p),))

    if beta >= 0.0:
        cell = concat(vperp_op(-1.0), v_op(-1.0), vperp_op(+1.0), v_op(+1.0))
    else:
        cell = concat(v_op(-1.0), vperp_op(-1.0), v_op(+1.0), vperp_op(+1.0))
    return Network(3, cell.ops * n)


def build_d_exact(phi: float, theta: float) -> Network:
    """Three composite ops realizing d_matrix(theta) with exact z-rotation
    factors: RZ(-phi/2), then V(phi, pi/2, theta), then RZ(phi/2)."""
    return Network(
        3,
        (
            NetOp(OpKind.RZ, _TRIPLE, -phi / 2.0),
            NetOp(OpKind.V, _TRIPLE, GateParams(phi, math.pi / 2, theta)),
            NetOp(OpKind.RZ, _TRIPLE, phi / 2.0),
        ),
    )


def build_d(
    phi: float,
    theta: float,
    n: int,
    lowered: bool = False,
    vperp_n: int | None = None,
) -> Network:
    """Network approximating d_matrix(theta): the two z-rotation factors are
    approx_rz networks with n cells each, around the exact central V."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    core_params = GateParams(phi, math.pi / 2, theta)
    core = (
        lower_v(core_params)
        if lowered
        else Network(3, (NetOp(OpKind.V, _TRIPLE, core_params),))
    )
    return concat(
        approx_rz(phi, -phi / 2.0, n, lowered=lowered, vperp_n=vperp_n),
        core,
        approx_rz(phi, phi / 2.0, n, lowered=lowered, vperp_n=vperp_n),
    )


_BUILDERS = ("T_ORDER", "VPERP", "RZ", "D")


def convergence_study(builder: str, params: dict, n_list: list[int]) -> list[ConvergenceSample]:
    """Distance to the exact target per n, for one construction family.

    T_ORDER: params {phi, beta}; at each n the step is beta/n and the
      distance is the plain Frobenius residual against the second-order
      expansion I - i step^2 G (the target is not unitary, so no phase
      minimization is applied).
    VPERP:  params {phi, beta}; phase_dist of approx_vperp to
      v_matrix(phi - pi/2, 0, beta).
    RZ:     params {phi, beta}; phase_dist of approx_rz to rz_matrix(beta).
    D:      params {phi, theta}; phase_dist of build_d to d_matrix(theta).
    """
    key = builder.upper()
    if key not in _BUILDERS:
        raise ValueError(f"unknown builder {builder!r}; expected one of {_BUILDERS}")
    if not n_list:
        raise ValueError("n_list must be nonempty")
    if list(n_list) != sorted(n_list):
        raise ValueError("n_list must be ascending")
    phi = float(params["phi"])
    samples = []
    for n in n_list:
        if key == "T_ORDER":
            step = float(params["beta"]) / n
            target = np.eye(8, dtype=np.complex128) - 1j * step**2 * t_generator(phi)
            dist = float(np.linalg.norm(eval_network(build_t(phi, step)) - target))
        elif key == "VPERP":
            beta = float(params["beta"])
            dist = phase_dist(
                eval_network(approx_vperp(phi, beta, n)),
                v_matrix(GateParams(phi - math.pi / 2, 0.0, beta)),
            )
        elif key == "RZ":
            beta = float(params["beta"])
            dist = phase_dist(eval_network(approx_rz(phi, beta, n)), rz_matrix(beta))
        else:
            theta = float(params["theta"])
            dist = phase_dist(eval_network(build_d(phi, theta, n)), d_matrix(theta))
        samples.append(ConvergenceSample(int(n), dist))
    return samples


_RZ_N_CAP = 1 << 12
_VPERP_N_CAP = 1 << 10


def _pick_rz_n(phi: float, beta: float, stage_eps: float) -> int:
    n = 1
    while True:
        err = max(
            phase_dist(eval_network(approx_rz(phi, beta, n)), rz_matrix(beta)),
            phase_dist(eval_network(approx_rz(phi, -beta, n)), rz_matrix(-beta)),
        )
        if err <= stage_eps or n >= _RZ_N_CAP:
            return n
        n *= 2


def _pick_vperp_n(phi: float, s: float, stage_eps: float) -> int:
    target = v_matrix(GateParams(phi - math.pi / 2, 0.0, s))
    n = 1
    while True:
        err = phase_dist(eval_network(approx_vperp(phi, s, n)), target)
        if err <= stage_eps or n >= _VPERP_N_CAP:
            return n
        n *= 2


def compile_d(
    fixed: GateParams,
    theta: float,
    stage_eps: float,
    n_max: int = 10**6,
) -> CompileReport:
    """Lower d_matrix(theta) all the way onto replicas of one fixed gate.

    Every A placement in the lowered network is replaced by the smallest
    power of ``fixed`` landing within stage_eps of its angle pair; the
    z-rotation and axis-rotation truncations are likewise sized to meet
    stage_eps in isolation.  Per-stage counts and distances report the
    actual composition error; nothing is budgeted across stages.

    Raises CompileError when some required angle pair cannot be reached
    within n_max applications (for example a fixed gate with alpha = theta
    = 0 never leaves the identity).
    """
    if not (stage_eps > 0.0):
        raise ValueError(f"stage_eps must be positive, got {stage_eps}")
    phi = fixed.phi
    beta = phi / 2.0
    rz_n = _pick_rz_n(phi, beta, stage_eps)
    s = math.sqrt(abs(beta) / (2.0 * rz_n))
    vperp_n = _pick_vperp_n(phi, s, stage_eps)

    segments = (
        ("rz_minus", approx_rz(phi, -beta, rz_n, lowered=True, vperp_n=vperp_n), rz_matrix(-beta)),
        ("v_core", lower_v(GateParams(phi, math.pi / 2, theta)), v_matrix(GateParams(phi, math.pi / 2, theta))),
        ("rz_plus", approx_rz(phi, beta, rz_n, lowered=True, vperp_n=vperp_n), rz_matrix(beta)),
    )

    # One power search per distinct (alpha1, theta1); inverse ops target the
    # inverse angle pair, so they too become plain powers of the fixed gate.
    powers: dict[tuple[float, float], ApproxQuery] = {}
    results: dict[tuple[float, float], object] = {}

    def target_of(op: NetOp) -> tuple[float, float]:
        p = inverse_params(op.params) if op.kind is OpKind.A_INV else op.params
        return (p.alpha, p.theta)

    unreachable = []
    for _, seg, _ in segments:
        for op in seg.ops:
            key = target_of(op)
            if key not in results:
                r = find_power(ApproxQuery(fixed, key[0], key[1], stage_eps, n_max))
                results[key] = r
                if not r.met:
                    unreachable.append((key, r.err))
    if unreachable:
        detail = "; ".join(
            f"(alpha1={a:.6g}, theta1={t:.6g}) best err {e:.4g}" for (a, t), e in unreachable
        )
        raise CompileError(f"unreachable target angles at eps={stage_eps}: {detail}")

    stages = []
    total = 0
    substituted_all = []
    for name, seg, exact in segments:
        ops = []
        count = 0
        for op in seg.ops:
            r = results[target_of(op)]
            count += r.n
            ops.append(
                NetOp(OpKind.A, op.placement, GateParams(phi, r.achieved_alpha, r.achieved_theta))
            )
        substituted = Network(3, tuple(ops))
        substituted_all.extend(ops)
        stages.append(
            CompileStage(name, count, phase_dist(eval_network(substituted, "lowered"), exact))
        )
        total += count

    final = phase_dist(eval_network(Network(3, tuple(substituted_all)), "lowered"), d_matrix(theta))
    table = tuple(sorted((key, results[key].n) for key in results))
    return CompileReport(
        total_a_count=total,
        per_stage=tuple(stages),
        final_distance=final,
        stage_eps=stage_eps,
        rz_n=rz_n,
        vperp_n=vperp_n,
        power_table=table,
    )
