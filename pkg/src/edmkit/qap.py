"""Quadratic assignment: objective, exhaustive oracle and a spectral shift bound.

A permutation ``p`` (0-based, ``p[i]`` is the location of facility ``i``)
corresponds to the permutation matrix ``X[i, p[i]] = 1``; the objective is
``trace(A X D X^T) = sum_ij A[i, j] D[p[i], p[j]]``.

When ``D`` is a spherical EDM, ``S = lambda* E - D`` is PSD and ``X E X^T = E``
for every permutation, so

    trace(A X D X^T) = lambda* e'Ae - trace(A X S X^T)
                     >= lambda* e'Ae - sum_i alpha_i beta_i,

with ``alpha``, ``beta`` the descending spectra of ``A`` and ``S`` (the
maximum of ``trace(A U S U^T)`` over orthogonal ``U`` bounds the one over
permutations).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .edm import distance_matrix
from .errors import InvalidMatrix, InvalidPermutation, TooLarge
from .linalg import Tolerance, as_tol, sym_matrix
from .spherical import min_shift

BRUTE_FORCE_MAX_N = 8


@dataclass(frozen=True)
class QapInstance:
    flow: NDArray[np.float64]
    dist: NDArray[np.float64]

    def __post_init__(self):
        A = sym_matrix(self.flow)
        D = distance_matrix(self.dist)
        if A.shape != D.shape:
            raise InvalidMatrix(f"flow order {A.shape[0]} differs from distance order {D.shape[0]}")
        object.__setattr__(self, "flow", A)
        object.__setattr__(self, "dist", D)

    @property
    def n(self) -> int:
        return self.flow.shape[0]


@dataclass(frozen=True)
class QapBoundReport:
    lower_bound: float
    shift: float
    spectrum_flow: NDArray[np.float64]
    spectrum_shifted: NDArray[np.float64]
    method: str = "spherical-shift-eigenvalue"


def _check_perm(perm: ArrayLike, n: int) -> NDArray[np.intp]:
    p = np.asarray(perm)
    if p.shape != (n,) or not np.issubdtype(p.dtype, np.integer) or not np.array_equal(np.sort(p), np.arange(n)):
        raise InvalidPermutation(f"expected a permutation of 0..{n - 1}, got {perm!r}")
    return p.astype(np.intp)


def permutation_matrix(perm: ArrayLike) -> NDArray[np.float64]:
    p = np.asarray(perm)
    X = np.zeros((p.size, p.size))
    X[np.arange(p.size), p] = 1.0
    return X


def qap_objective(inst: QapInstance, perm: ArrayLike) -> float:
    p = _check_perm(perm, inst.n)
    return float(np.sum(inst.flow * inst.dist[np.ix_(p, p)]))


@lru_cache(maxsize=BRUTE_FORCE_MAX_N + 1)
def _all_permutations(n: int) -> NDArray[np.intp]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)
    perms.setflags(write=False)
    return perms


def qap_brute_force(inst: QapInstance, max_n: int = BRUTE_FORCE_MAX_N) -> tuple[tuple[int, ...], float]:
    """Exact minimizer over all ``n!`` permutations.

    Permutations are scanned in lexicographic order and the first one
    attaining the minimum wins, so ties resolve to the lexicographically
    smallest permutation.
    """
    n = inst.n
    if n > max_n:
        raise TooLarge(f"brute force limited to n <= {max_n}, got n = {n}")
    perms = _all_permutations(n)
    values = np.empty(len(perms))
    chunk = 8192
    for start in range(0, len(perms), chunk):
        P = perms[start:start + chunk]
        permuted = inst.dist[P[:, :, None], P[:, None, :]]
        values[start:start + chunk] = np.einsum("ij,kij->k", inst.flow, permuted)
    best = int(np.argmin(values))
    return tuple(int(x) for x in perms[best]), float(values[best])


def qap_shift_lower_bound(inst: QapInstance, tol: Tolerance | float | None = None) -> QapBoundReport:
    """Lower bound on the QAP optimum from the minimal shift of a spherical ``D``.

    Raises
    ------
    NotSpherical
        If the distance matrix is not a spherical EDM.
    """
    tol = as_tol(tol)
    lam = min_shift(inst.dist, tol)
    n = inst.n
    S = lam * np.ones((n, n)) - inst.dist
    alpha = np.linalg.eigvalsh(inst.flow)[::-1]
    beta = np.linalg.eigvalsh((S + S.T) / 2)[::-1]
    bound = lam * float(inst.flow.sum()) - float(alpha @ beta)
    return QapBoundReport(bound, lam, alpha, beta)
