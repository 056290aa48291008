import numpy as np
import pytest

from unigate import GateParams


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_params(rng, n=1):
    """n GateParams triples drawn uniformly from [0, 2*pi)^3."""
    draws = [GateParams(*rng.uniform(0.0, 2 * np.pi, 3)) for _ in range(n)]
    return draws[0] if n == 1 else draws


def random_unitary_2x2(rng):
    """Haar-ish 2x2 unitary via QR with phase-normalized diagonal."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    return q * np.exp(1j * rng.uniform(0.0, 2 * np.pi))
