"""Dense symmetric linear algebra used throughout edmkit.

Every routine here works on plain ``numpy`` arrays. Symmetric inputs are
validated and symmetrized by :func:`sym_matrix`; the rank, PSD and
pseudo-inverse decisions all share one relative threshold,
``tol.rel * max(1, |largest eigenvalue|)``, so integer-valued grid matrices
and random instances are treated the same way.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InvalidMatrix, InvalidPartition, TooLarge

DEFAULT_REL_TOL = 1e-8
DEFAULT_ASYM_REL = 1e-10
DEFAULT_MAX_ORDER = 4096
EIG_KAPPA = 100.0


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance for rank and semidefiniteness decisions."""

    rel: float = DEFAULT_REL_TOL

    def __post_init__(self):
        if not (self.rel > 0 and np.isfinite(self.rel)):
            raise ValueError(f"tolerance must be positive and finite, got {self.rel!r}")

    def threshold(self, scale: float) -> float:
        return self.rel * max(1.0, abs(scale))


DEFAULT_TOL = Tolerance()


def as_tol(tol: Tolerance | float | None) -> Tolerance:
    if tol is None:
        return DEFAULT_TOL
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order with matching orthonormal columns."""

    values: NDArray[np.float64]
    vectors: NDArray[np.float64]

    def reconstruct(self) -> NDArray[np.float64]:
        return (self.vectors * self.values) @ self.vectors.T


def _square_finite(M: ArrayLike, what: str = "matrix") -> NDArray[np.float64]:
    A = np.array(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidMatrix(f"{what} must be a non-empty square 2-D array, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidMatrix(f"{what} has non-finite entries")
    return A


def sym_matrix(M: ArrayLike, asym_rel: float = DEFAULT_ASYM_REL) -> NDArray[np.float64]:
    """Validate ``M`` as a finite symmetric matrix and return ``(M + M.T) / 2``.

    Asymmetry larger than ``asym_rel * max(1, max|M|)`` is rejected; smaller
    discrepancies (typically last-bit noise from text round trips) are
    averaged away so the result is exactly symmetric.
    """
    A = _square_finite(M)
    scale = max(1.0, float(np.max(np.abs(A))))
    asym = float(np.max(np.abs(A - A.T)))
    if asym > asym_rel * scale:
        raise InvalidMatrix(f"matrix is not symmetric (max |M - M^T| = {asym:.3g})")
    return (A + A.T) / 2


def sym_eigen(M: ArrayLike) -> EigenDecomposition:
    """Symmetric eigendecomposition with a reproducible basis.

    Eigenvalues are sorted in descending order. Each eigenvector is signed
    so that its largest-magnitude entry (the first one on ties) is
    nonnegative. Vectors inside a degenerate eigenvalue cluster are whatever
    LAPACK returns; only basis-invariant quantities should be relied on there.
    """
    A = sym_matrix(M)
    w, V = np.linalg.eigh(A)
    w = np.ascontiguousarray(w[::-1])
    V = np.ascontiguousarray(V[:, ::-1])
    pivot = np.argmax(np.abs(V), axis=0)
    signs = np.where(V[pivot, np.arange(V.shape[1])] < 0, -1.0, 1.0)
    V *= signs
    return EigenDecomposition(w, V)


def _rank_threshold(values: NDArray[np.float64], tol: Tolerance) -> float:
    return tol.threshold(max(abs(values[0]), abs(values[-1])))


def numerical_rank(M: ArrayLike, tol: Tolerance | float | None = None) -> int:
    """Number of eigenvalues with ``|lambda| > tol.rel * max(1, |lambda_1|, |lambda_n|)``."""
    tol = as_tol(tol)
    w = np.linalg.eigvalsh(sym_matrix(M))
    return int(np.count_nonzero(np.abs(w) > _rank_threshold(w[::-1], tol)))


def min_eigenvalue(M: ArrayLike) -> float:
    return float(np.linalg.eigvalsh(sym_matrix(M))[0])


def psd_margin(M: ArrayLike, tol: Tolerance | float | None = None) -> tuple[float, float]:
    """Return ``(lambda_min, threshold)`` used by :func:`is_psd`."""
    tol = as_tol(tol)
    w = np.linalg.eigvalsh(sym_matrix(M))
    return float(w[0]), tol.threshold(w[-1])


def is_psd(M: ArrayLike, tol: Tolerance | float | None = None) -> bool:
    """True iff ``lambda_min(M) >= -tol.rel * max(1, |lambda_1|)``."""
    lam_min, thr = psd_margin(M, tol)
    return lam_min >= -thr


def pinv(M: ArrayLike, tol: Tolerance | float | None = None) -> NDArray[np.float64]:
    """Moore-Penrose pseudo-inverse of a symmetric matrix.

    Eigenvalues above the shared rank threshold are inverted and the rest
    are zeroed, so ``pinv`` and :func:`numerical_rank` always agree on the
    range of ``M``.
    """
    tol = as_tol(tol)
    eig = sym_eigen(M)
    keep = np.abs(eig.values) > _rank_threshold(eig.values, tol)
    V = eig.vectors[:, keep]
    P = (V / eig.values[keep]) @ V.T
    return (P + P.T) / 2


def kron(A: ArrayLike, B: ArrayLike, max_order: int = DEFAULT_MAX_ORDER) -> NDArray[np.float64]:
    """Kronecker product of two square matrices, ``B`` being the fast index."""
    A = _square_finite(A, "left factor")
    B = _square_finite(B, "right factor")
    order = A.shape[0] * B.shape[0]
    if order > max_order:
        raise TooLarge(f"Kronecker product of order {order} exceeds max order {max_order}")
    return np.kron(A, B)


def schur_psd_test(M: ArrayLike, k: int, tol: Tolerance | float | None = None) -> bool:
    """Decide ``M >= 0`` through the generalized Schur complement.

    ``M`` is split as ``[[A, B], [B.T, C]]`` with ``A`` of order ``k``. The
    result is true iff ``C`` is PSD, ``A - B C^+ B.T`` is PSD, and ``B``
    annihilates every numerically-null eigenvector of ``C``.
    """
    tol = as_tol(tol)
    M = sym_matrix(M)
    n = M.shape[0]
    if not isinstance(k, (int, np.integer)) or not 1 <= k < n:
        raise InvalidPartition(f"block size k must satisfy 1 <= k < {n}, got {k!r}")
    A, B, C = M[:k, :k], M[:k, k:], M[k:, k:]

    eig = sym_eigen(C)
    thr = _rank_threshold(eig.values, tol)
    if eig.values[-1] < -tol.threshold(eig.values[0]):
        return False

    null = np.abs(eig.values) <= thr
    if np.any(null):
        m_scale = max(1.0, float(np.max(np.abs(M))))
        if np.max(np.linalg.norm(B @ eig.vectors[:, null], axis=0)) > tol.rel * m_scale:
            return False

    V = eig.vectors[:, ~null]
    C_pinv = (V / eig.values[~null]) @ V.T
    S = A - B @ C_pinv @ B.T
    return is_psd((S + S.T) / 2, tol)
