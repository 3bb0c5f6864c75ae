"""Gram/distance transforms, EDM recognition and configuration recovery.

Points are always placed with their centroid at the origin, so the Gram
matrix of a distance matrix ``D`` is ``tau(D) = -1/2 J D J`` and the
configuration ``P`` satisfies ``P P^T = tau(D)`` and ``P^T e = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InvalidMatrix, NotCentered, NotEdm
from .linalg import (
    DEFAULT_ASYM_REL,
    Tolerance,
    as_tol,
    numerical_rank,
    psd_margin,
    sym_eigen,
    sym_matrix,
)


@dataclass(frozen=True)
class EdmVerdict:
    is_edm: bool
    embedding_dim: int
    rank_D: int
    psd_defect: float  # most negative eigenvalue of tau(D); 0.0 when PSD


def hollow_matrix(D: ArrayLike, asym_rel: float = DEFAULT_ASYM_REL) -> NDArray[np.float64]:
    """Validate a symmetric matrix with an exactly zero diagonal."""
    A = sym_matrix(D, asym_rel)
    if np.any(np.diag(A) != 0):
        raise InvalidMatrix("distance matrix diagonal must be exactly zero")
    return A


def distance_matrix(D: ArrayLike, asym_rel: float = DEFAULT_ASYM_REL) -> NDArray[np.float64]:
    """Validate a candidate EDM: hollow, symmetric, finite and nonnegative.

    Hollowness is checked exactly rather than within a tolerance; every
    structured family has an exact zero diagonal and a silent repair would
    hide malformed input.
    """
    A = hollow_matrix(D, asym_rel)
    if np.any(A < 0):
        raise InvalidMatrix("distance matrix has negative entries")
    return A


def centering_projector(n: int) -> NDArray[np.float64]:
    """``J = I - E/n``, the orthogonal projector onto ``{x : e^T x = 0}``."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    return np.eye(n) - np.full((n, n), 1.0 / n)


def _double_center(A: NDArray[np.float64]) -> NDArray[np.float64]:
    # J A J via means; O(n^2) and keeps the row sums at rounding level.
    row = A.mean(axis=1)
    C = A - row[:, None] - row[None, :] + row.mean()
    return (C + C.T) / 2


def tau(D: ArrayLike) -> NDArray[np.float64]:
    """Gram matrix ``-1/2 J D J`` of the centered points generating ``D``.

    ``D`` only needs to be hollow and symmetric here, so this is the full
    linear map between hollow and centered matrices, not just its EDM part.
    """
    A = hollow_matrix(D)
    return -0.5 * _double_center(A)


def kappa(B: ArrayLike, tol: Tolerance | float | None = None) -> NDArray[np.float64]:
    """Inverse of :func:`tau`: ``diag(B) e^T + e diag(B)^T - 2B``.

    Raises
    ------
    NotCentered
        If some row of ``B`` sums to more than ``tol.rel * n * max(1, max|B|)``.
    """
    tol = as_tol(tol)
    A = sym_matrix(B)
    n = A.shape[0]
    scale = max(1.0, float(np.max(np.abs(A))))
    worst = float(np.max(np.abs(A.sum(axis=1))))
    if worst > tol.rel * n * scale:
        raise NotCentered(f"matrix rows do not sum to zero (max |Be| = {worst:.3g})")
    d = np.diag(A)
    K = d[:, None] + d[None, :] - 2 * A
    np.fill_diagonal(K, 0.0)
    return K


def check_edm(D: ArrayLike, tol: Tolerance | float | None = None) -> EdmVerdict:
    """Recognize an EDM: ``D`` is one iff ``tau(D)`` is PSD; its rank is the embedding dimension."""
    tol = as_tol(tol)
    A = distance_matrix(D)
    B = tau(A)
    lam_min, thr = psd_margin(B, tol)
    psd = bool(lam_min >= -thr)
    return EdmVerdict(
        is_edm=psd,
        embedding_dim=numerical_rank(B, tol),
        rank_D=numerical_rank(A, tol),
        psd_defect=0.0 if psd else lam_min,
    )


def recover_configuration(D: ArrayLike, tol: Tolerance | float | None = None) -> NDArray[np.float64]:
    """Centered ``n x r`` point matrix ``P`` with ``P P^T = tau(D)``.

    Columns follow the top ``r`` eigenpairs of ``tau(D)`` in descending
    order, scaled by the square roots of the eigenvalues. The eigenvector
    sign rule of :func:`~edmkit.linalg.sym_eigen` makes the result
    reproducible.
    """
    tol = as_tol(tol)
    verdict = check_edm(D, tol)
    if not verdict.is_edm:
        raise NotEdm(f"not a Euclidean distance matrix (tau(D) has eigenvalue {verdict.psd_defect:.3g})")
    r = verdict.embedding_dim
    eig = sym_eigen(tau(D))
    return eig.vectors[:, :r] * np.sqrt(eig.values[:r])


def pairwise_sq_distances(P: ArrayLike) -> NDArray[np.float64]:
    """Squared Euclidean distances between the rows of ``P``; exactly hollow and symmetric."""
    P = np.asarray(P, dtype=np.float64)
    diff = P[:, None, :] - P[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)
