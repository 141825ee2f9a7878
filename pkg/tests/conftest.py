import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_density(dim, rng):
    """Random full-rank density matrix (Ginibre construction)."""
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_hermitian(dim, rng):
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (x + x.conj().T) / 2


# Bloch triples of the four Bell states, vertices of the state tetrahedron.
BELL_VERTICES = np.array([
    (1.0, -1.0, 1.0),   # phi+
    (-1.0, 1.0, 1.0),   # phi-
    (1.0, 1.0, -1.0),   # psi+
    (-1.0, -1.0, -1.0),  # psi-
])


def random_bloch_triple(rng):
    """Random point inside the Bell-diagonal tetrahedron."""
    w = rng.dirichlet(np.ones(4))
    return tuple(w @ BELL_VERTICES)
