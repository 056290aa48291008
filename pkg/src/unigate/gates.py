"""Named gate matrices, controlled embeddings, and axis-angle decomposition.

The central object is the two-qubit gate ``a_matrix(phi, alpha, theta)``:
identity when the control qubit is 0; when the control is 1 the target
undergoes a rotation by 2*theta about the axis (cos phi, sin phi, 0) of
its Bloch sphere together with a conditional phase alpha.  The three-qubit
gates here are the doubly-controlled variant of that block plus the fixed
conditional-rotation gate ``d_matrix`` it is used to synthesize.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import TAU, reduce_angle, unitarity_defect


@dataclass(frozen=True)
class GateParams:
    """Angle triple (phi, alpha, theta), canonicalized to [0, 2*pi)."""

    phi: float
    alpha: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "phi", reduce_angle(float(self.phi)))
        object.__setattr__(self, "alpha", reduce_angle(float(self.alpha)))
        object.__setattr__(self, "theta", reduce_angle(float(self.theta)))


@dataclass(frozen=True)
class Placement:
    """Controls and target of one gate application on a width-qubit register.

    Qubit indices are 1-based; qubit 1 is the most significant bit of the
    basis index.
    """

    controls: tuple[int, ...]
    target: int
    width: int

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(int(c) for c in self.controls))
        qubits = (*self.controls, self.target)
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"control/target qubits must be distinct: {qubits}")
        if any(not (1 <= q <= self.width) for q in qubits):
            raise ValueError(f"qubit index out of range 1..{self.width}: {qubits}")


@dataclass(frozen=True)
class BlochDecomp:
    """Axis-angle form of a 2x2 unitary: e^{i*phase} * (cos(angle/2) I - i sin(angle/2) axis.sigma)."""

    global_phase: float
    axis: tuple[float, float, float]
    angle: float


def a_block(p: GateParams) -> np.ndarray:
    """The conditioned 2x2 block of the two-qubit gate."""
    c, s = math.cos(p.theta), math.sin(p.theta)
    return np.array(
        [
            [np.exp(1j * p.alpha) * c, -1j * np.exp(1j * (p.alpha - p.phi)) * s],
            [-1j * np.exp(1j * (p.alpha + p.phi)) * s, np.exp(1j * p.alpha) * c],
        ],
        dtype=np.complex128,
    )


def controlled_embed(block: np.ndarray, pl: Placement) -> np.ndarray:
    """Embed a 2x2 block as a multiply-controlled gate on a register.

    The block acts on the target qubit of every basis state whose control
    qubits all read 1; every other basis state is passed through.
    """
    block = np.asarray(block, dtype=np.complex128)
    if block.shape != (2, 2):
        raise ValueError(f"block must be 2x2, got {block.shape}")
    dim = 1 << pl.width
    tbit = 1 << (pl.width - pl.target)
    cmask = 0
    for c in pl.controls:
        cmask |= 1 << (pl.width - c)
    m = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        if col & cmask == cmask:
            t = 1 if col & tbit else 0
            m[col & ~tbit, col] += block[0, t]
            m[col | tbit, col] += block[1, t]
        else:
            m[col, col] = 1.0
    return m


def a_matrix(p: GateParams) -> np.ndarray:
    """4x4 two-qubit gate: control qubit 1, target qubit 2."""
    return controlled_embed(a_block(p), Placement((1,), 2, 2))


def v_matrix(p: GateParams) -> np.ndarray:
    """8x8 doubly-controlled gate: controls 1 and 2, target 3, same block."""
    return controlled_embed(a_block(p), Placement((1, 2), 3, 3))


def d_matrix(theta: float) -> np.ndarray:
    """8x8 conditional rotation: identity except the {|110>, |111>} block
    [[i cos(theta), sin(theta)], [sin(theta), i cos(theta)]]."""
    m = np.eye(8, dtype=np.complex128)
    c, s = math.cos(theta), math.sin(theta)
    m[6, 6] = m[7, 7] = 1j * c
    m[6, 7] = m[7, 6] = s
    return m


def p_matrix(phi: float) -> np.ndarray:
    """8x8 gate exchanging |101> and |111> with phases e^{+-i phi}."""
    m = np.eye(8, dtype=np.complex128)
    m[5, 5] = m[7, 7] = 0.0
    m[5, 7] = np.exp(-1j * phi)
    m[7, 5] = np.exp(1j * phi)
    return m


def q_matrix() -> np.ndarray:
    """8x8 permutation exchanging |101> and |110> (controlled swap)."""
    m = np.eye(8, dtype=np.complex128)
    m[5, 5] = m[6, 6] = 0.0
    m[5, 6] = m[6, 5] = 1.0
    return m


def rz_matrix(beta: float) -> np.ndarray:
    """8x8 conditional z rotation: diag(1, ..., 1, e^{i beta}, e^{-i beta})."""
    m = np.eye(8, dtype=np.complex128)
    m[6, 6] = np.exp(1j * beta)
    m[7, 7] = np.exp(-1j * beta)
    return m


def qubit_perm(perm: tuple[int, ...] | list[int]) -> np.ndarray:
    """Permutation matrix relabeling qubits: qubit i moves to slot perm[i-1].

    The returned U satisfies U |q_1 ... q_w> = |r_1 ... r_w> with
    r_{perm[i-1]} = q_i.  ``perm`` must be a bijection of 1..w.
    """
    perm = tuple(int(x) for x in perm)
    w = len(perm)
    if sorted(perm) != list(range(1, w + 1)):
        raise ValueError(f"not a permutation of 1..{w}: {perm}")
    dim = 1 << w
    m = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        row = 0
        for i in range(1, w + 1):
            bit = (col >> (w - i)) & 1
            row |= bit << (w - perm[i - 1])
        m[row, col] = 1.0
    return m


_AXIS_TOL = 1e-9
_DEGENERATE_TOL = 1e-12


def bloch_decompose(u: np.ndarray) -> BlochDecomp:
    """Write a 2x2 unitary as e^{i d} (cos(T/2) I - i sin(T/2) n.sigma).

    Canonical form: T in [0, 2*pi); the first component of n exceeding
    ~1e-9 in magnitude is positive; a (near-)identity rotation reports the
    conventional axis (0, 0, 1).  The triple (d, n, T) is adjusted jointly,
    so reconstruction always reproduces the input.
    """
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {u.shape}")
    if unitarity_defect(u) > 1e-8:
        raise ValueError("matrix is not unitary within 1e-8")

    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    phase = 0.5 * math.atan2(det.imag, det.real)
    s = np.exp(-1j * phase) * u

    cos_half = min(1.0, max(-1.0, float((s[0, 0] + s[1, 1]).real) / 2.0))
    v = np.array(
        [
            -(s[0, 1].imag + s[1, 0].imag) / 2.0,
            (s[1, 0].real - s[0, 1].real) / 2.0,
            (s[1, 1].imag - s[0, 0].imag) / 2.0,
        ]
    )
    sin_half = float(np.linalg.norm(v))

    if sin_half < _DEGENERATE_TOL:
        if cos_half < 0.0:
            phase += math.pi
            cos_half = -cos_half
        angle = 2.0 * math.atan2(sin_half, cos_half)
        return BlochDecomp(reduce_angle(phase), (0.0, 0.0, 1.0), angle)

    axis = v / sin_half
    angle = 2.0 * math.atan2(sin_half, cos_half)
    for comp in axis:
        if abs(comp) > _AXIS_TOL:
            if comp < 0.0:
                axis = -axis
                angle = TAU - angle
                phase += math.pi
            break
    return BlochDecomp(reduce_angle(phase), (float(axis[0]), float(axis[1]), float(axis[2])), angle)


def bloch_reconstruct(d: BlochDecomp) -> np.ndarray:
    """Inverse of bloch_decompose."""
    nx, ny, nz = d.axis
    n_sigma = np.array([[nz, nx - 1j * ny], [nx + 1j * ny, -nz]], dtype=np.complex128)
    half = d.angle / 2.0
    return np.exp(1j * d.global_phase) * (
        math.cos(half) * np.eye(2, dtype=np.complex128) - 1j * math.sin(half) * n_sigma
    )
