"""Dense complex matrix helpers for small multi-qubit registers.

Conventions:
  Matrices are square ``complex128`` ndarrays.  A register of w qubits has
  dimension 2**w and qubit 1 is the most significant bit of the basis
  index, so the basis ket |q1 q2 ... qw> sits at index q1 q2 ... qw read
  as binary.  All functions are pure; arguments are never mutated.
"""
from __future__ import annotations

import math

import numpy as np

TAU = 2.0 * math.pi


def reduce_angle(x: float) -> float:
    """Canonical representative of x modulo 2*pi, in [0, 2*pi)."""
    if not math.isfinite(x):
        raise ValueError(f"angle must be finite, got {x!r}")
    r = x % TAU
    return 0.0 if r >= TAU else r


def _check_square(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product a @ b; dimensions must agree."""
    a, b = _check_square(a, "a"), _check_square(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=np.complex128).conj().T.copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the left factor carries the more significant qubits."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def phase_dist(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance between a and b minimized over a global phase on b.

    The minimizing phase is arg(trace(adjoint(b) @ a)); the distance is then
    evaluated directly as ||a - e^{i gamma} b|| rather than through the
    expanded form sqrt(||a||^2 + ||b||^2 - 2|trace|), which cancels
    catastrophically for nearly phase-equal inputs.  A vanishing trace
    leaves the phase undetermined (arg 0) and the plain Frobenius distance
    is returned.
    """
    a, b = _check_square(a, "a"), _check_square(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    t = np.trace(b.conj().T @ a)
    gamma = math.atan2(t.imag, t.real)
    return float(np.linalg.norm(a - np.exp(1j * gamma) * b))


def unitarity_defect(a: np.ndarray) -> float:
    """Frobenius norm of adjoint(a) @ a - I."""
    a = _check_square(a)
    g = a.conj().T @ a
    return float(np.linalg.norm(g - np.eye(a.shape[0])))


def mat_power(a: np.ndarray, n: int) -> np.ndarray:
    """n-th matrix power by binary exponentiation; mat_power(a, 0) is I.

    Squares from the low bit up, so the accumulation order is fixed and
    results are reproducible bit for bit.
    """
    a = _check_square(a)
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = np.eye(a.shape[0], dtype=np.complex128)
    base = a.copy()
    while n:
        if n & 1:
            result = base @ result
        n >>= 1
        if n:
            base = base @ base
    return result


def apply(a: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Apply matrix a to state vector s."""
    a = _check_square(a)
    s = np.asarray(s, dtype=np.complex128)
    if s.ndim != 1 or s.shape[0] != a.shape[0]:
        raise ValueError(f"dimension mismatch: matrix {a.shape[0]}, state {s.shape}")
    return a @ s


def basis_state(bits: str) -> np.ndarray:
    """State vector for the basis ket labeled by a bit string, e.g. '110'."""
    if not bits or any(c not in "01" for c in bits):
        raise ValueError(f"bad basis label {bits!r}")
    vec = np.zeros(2 ** len(bits), dtype=np.complex128)
    vec[int(bits, 2)] = 1.0
    return vec
