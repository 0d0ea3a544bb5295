import numpy as np
import pytest

from framescale import make_frame


def random_unit_frame(rng, n, m):
    """Random unit-norm spanning frame of m vectors in R^n."""
    while True:
        V = rng.standard_normal((m, n))
        V /= np.linalg.norm(V, axis=1, keepdims=True)
        if np.linalg.matrix_rank(V) == n:
            return make_frame(V)


def random_scalable_frame(rng, n, m):
    """Frame with a known positive scaling: start from a random Parseval
    frame (orthonormal columns of a random orthogonal matrix, projected) and
    divide each vector by a random positive d_i, so scaling by d recovers
    the Parseval frame."""
    while True:
        Q, _ = np.linalg.qr(rng.standard_normal((m, m)))
        P = Q[:, :n].T  # n x m with orthonormal rows: Parseval synthesis
        if np.linalg.matrix_rank(P) == n and np.abs(P).min() > 1e-6:
            break
    d = rng.uniform(0.5, 2.0, size=m)
    X = P / d
    return make_frame(X.T), d


def angles_frame(*angles):
    """Unit-norm frame in R^2 from a list of angles."""
    return make_frame([[np.cos(t), np.sin(t)] for t in angles])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
