import numpy as np
import pytest

from accelqutrit.linalg import BipartiteShape, DensityMatrix


def random_hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


def random_state(rng, da, db, rank=None):
    n = da * db
    g = rng.normal(size=(n, rank or n)) + 1j * rng.normal(size=(n, rank or n))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, BipartiteShape(da, db))


def random_product_state(rng, d):
    def local():
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        v /= np.linalg.norm(v)
        return np.outer(v, v.conj())

    return np.kron(local(), local())


def bell() -> DensityMatrix:
    psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return DensityMatrix(np.outer(psi, psi), BipartiteShape(2, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
