import numpy as np
import pytest

EPS = np.finfo(float).eps


def max_abs(A):
    A = np.asarray(A, dtype=float)
    return float(np.max(np.abs(A))) if A.size else 0.0


def scale_of(*arrays):
    return max([1.0] + [max_abs(A) for A in arrays])


def random_orthogonal(rng, n):
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def controlled_symmetric(rng, n, rank=None, psd=False):
    """Symmetric matrix with eigenvalue magnitudes in [0.5, 3] and ``n - rank`` exact zeros."""
    rank = n if rank is None else rank
    vals = rng.uniform(0.5, 3.0, rank)
    if not psd:
        vals *= rng.choice([-1.0, 1.0], rank)
    Q = random_orthogonal(rng, n)[:, :rank]
    M = (Q * vals) @ Q.T
    return (M + M.T) / 2


def circumsphere_lstsq(X):
    """Center and squared radius of the sphere through the rows of ``X``.

    Solves ``2 x_i.c + (rho^2 - |c|^2) = |x_i|^2`` by least squares; an
    oracle that never touches distance matrices.
    """
    n, r = X.shape
    A = np.hstack([2 * X, np.ones((n, 1))])
    b = np.sum(X * X, axis=1)
    sol = np.linalg.lstsq(A, b, rcond=None)[0]
    c = sol[:r]
    return c, float(sol[r] + c @ c)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


G3 = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]], dtype=float)
COL3 = np.array([[0, 1, 4], [1, 0, 1], [4, 1, 0]], dtype=float)
GRID22 = np.array([[0, 1, 1, 2], [1, 0, 2, 1], [1, 2, 0, 1], [2, 1, 1, 0]], dtype=float)
