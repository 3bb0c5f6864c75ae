"""Exact constructors for structured EDM families and random test instances.

The path, grid, hypercube and collinear families are integer valued and
built directly from their metric definitions, so every entry is exact.
Random instances use numpy's PCG64 bit generator, seeded explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .edm import pairwise_sq_distances, tau
from .errors import DegenerateSample, TooLarge
from .linalg import DEFAULT_MAX_ORDER, numerical_rank

RANDOM_RADIUS_RANGE = (0.5, 2.0)
MIN_RELATIVE_GAP = 1e-3


@dataclass(frozen=True)
class GridIndexMap:
    """1-based numbering of an ``m``-row, ``n``-column grid.

    Grid point ``(i, j)`` with column ``i`` in ``1..n`` and row ``j`` in
    ``1..m`` gets index ``s = i + n(j - 1)``.
    """

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"grid dimensions must be positive, got ({self.m}, {self.n})")

    @property
    def size(self) -> int:
        return self.m * self.n

    def forward(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.m):
            raise IndexError(f"grid point ({i}, {j}) outside a {self.m} x {self.n} grid")
        return i + self.n * (j - 1)

    def inverse(self, s: int) -> tuple[int, int]:
        if not 1 <= s <= self.size:
            raise IndexError(f"index {s} outside 1..{self.size}")
        j = -(-s // self.n)  # ceil(s / n) in integer arithmetic
        return s - self.n * (j - 1), j


@dataclass(frozen=True)
class PathEdm:
    """Path matrix ``G_n`` with its staircase generating points.

    ``points`` are NOT centered: point ``i`` has its first ``i - 1``
    coordinates equal to 1 and the rest 0, and all of them lie on the sphere
    centered at ``(1/2, ..., 1/2)`` with squared radius ``(n - 1)/4``. Use
    :func:`~edmkit.edm.recover_configuration` for the centered frame.
    """

    matrix: NDArray[np.float64]
    points: NDArray[np.float64]
    center: NDArray[np.float64]

    @property
    def radius_sq(self) -> float:
        return (self.matrix.shape[0] - 1) / 4


@dataclass(frozen=True)
class HypercubeEdm:
    matrix: NDArray[np.float64]
    vertices: NDArray[np.float64]


def _check_order(order: int, max_order: int) -> None:
    if order > max_order:
        raise TooLarge(f"matrix order {order} exceeds max order {max_order}")


def path_edm(n: int) -> PathEdm:
    """Manhattan distance matrix ``g_ij = |i - j|`` of a one-row grid."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    idx = np.arange(n)
    G = np.abs(idx[:, None] - idx[None, :]).astype(np.float64)
    Q = (idx[:, None] > np.arange(n - 1)[None, :]).astype(np.float64)
    return PathEdm(G, Q, np.full(n - 1, 0.5))


def manhattan_grid(m: int, n: int, max_order: int = DEFAULT_MAX_ORDER) -> NDArray[np.float64]:
    """Manhattan distance matrix of an ``m x n`` grid, entry ``|i - k| + |j - l|``."""
    grid = GridIndexMap(m, n)
    _check_order(grid.size, max_order)
    s = np.arange(grid.size)
    col, row = s % n, s // n
    return (np.abs(col[:, None] - col[None, :]) + np.abs(row[:, None] - row[None, :])).astype(np.float64)


def hypercube_hamming(r: int, max_order: int = DEFAULT_MAX_ORDER) -> HypercubeEdm:
    """Hamming distances between the ``2^r`` vertices of the unit hypercube.

    Vertex ``v`` (0-based) is the binary expansion of ``v`` with the first
    coordinate as the most significant bit, so vertex 0 is the origin.
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    _check_order(2**r, max_order)
    v = np.arange(2**r, dtype=np.uint64)
    D = np.bitwise_count(v[:, None] ^ v[None, :]).astype(np.float64)
    shifts = np.arange(r - 1, -1, -1, dtype=np.uint64)
    vertices = ((v[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.float64)
    return HypercubeEdm(D, vertices)


def collinear_sq_edm(n: int) -> NDArray[np.float64]:
    """``d_ij = (i - j)^2``: points ``0, 1, ..., n-1`` on a line, never spherical for ``n >= 3``."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    idx = np.arange(n)
    return ((idx[:, None] - idx[None, :]) ** 2).astype(np.float64)


def random_sphere_points(n: int, r: int, rng: np.random.Generator) -> NDArray[np.float64]:
    """``n`` points uniform on a sphere of random radius in ``R^r``, centroid moved to the origin."""
    radius = rng.uniform(*RANDOM_RADIUS_RANGE)
    X = rng.standard_normal((n, r))
    X *= radius / np.linalg.norm(X, axis=1, keepdims=True)
    return X - X.mean(axis=0)


def random_spherical_edm(
    n: int,
    r: int,
    seed: int,
    max_retries: int = 100,
    max_order: int = DEFAULT_MAX_ORDER,
) -> NDArray[np.float64]:
    """Deterministic random spherical EDM of order ``n`` and embedding dimension ``r``.

    Draws are rejected when the configuration is close to degenerate: the
    ``r``-th Gram eigenvalue, and the ``(r+1)``-th eigenvalue of ``D`` in
    magnitude, must both exceed ``1e-3`` of the largest one.
    """
    if r < 1 or n < r + 1:
        raise ValueError(f"need r >= 1 and n >= r + 1, got n={n}, r={r}")
    _check_order(n, max_order)
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(max_retries):
        D = pairwise_sq_distances(random_sphere_points(n, r, rng))
        g = np.linalg.eigvalsh(tau(D))[::-1]
        d = np.sort(np.abs(np.linalg.eigvalsh(D)))[::-1]
        if g[r - 1] > MIN_RELATIVE_GAP * g[0] and d[r] > MIN_RELATIVE_GAP * d[0]:
            if numerical_rank(tau(D)) == r:
                return D
    raise DegenerateSample(f"no well-conditioned spherical sample after {max_retries} draws (n={n}, r={r})")
