"""Spherical and regular EDMs: circumradius, center and minimal PSD shift.

An EDM is spherical when its generating points lie on a hypersphere. With
``B = tau(D)`` and ``n`` points the squared radius is

    rho^2 = e'De / 2n^2 + e'D B^+ De / 4n^2,

the center (in the centered configuration frame) is ``a = P^+ De / 2n``,
and ``lambda* = 2 rho^2`` is the smallest ``lambda`` with ``lambda E - D``
PSD. The primary sphericality test evaluates that PSD condition at the
computed ``lambda*``; for a non-spherical EDM no shift works, so it fails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .edm import EdmVerdict, distance_matrix, tau
from .errors import NotEdm, NotSpherical
from .linalg import Tolerance, as_tol, numerical_rank, sym_eigen


@dataclass(frozen=True)
class SphereInfo:
    radius: float
    radius_sq: float
    center: NDArray[np.float64] | None  # None when the frame is unknown (composition)
    min_shift: float


@dataclass(frozen=True)
class SphericalDiagnostics:
    """Outcome of the three equivalent sphericality tests.

    ``psd_shift_test`` is the one that decides. ``indeterminate`` flags
    instances whose PSD margin sits within a factor 10 of the tolerance
    threshold, or where the rank test disagrees with the decision.
    """

    rank_test: bool
    psd_shift_test: bool
    center_residual: float
    center_test: bool
    psd_shift_min_eig: float
    indeterminate: bool


@dataclass(frozen=True)
class EdmClassification:
    verdict: EdmVerdict
    spherical: bool
    regular: bool
    sphere: SphereInfo | None
    diagnostics: SphericalDiagnostics | None


@dataclass(frozen=True)
class _Analysis:
    D: NDArray[np.float64]
    verdict: EdmVerdict
    radius_sq: float
    center: NDArray[np.float64]
    diagnostics: SphericalDiagnostics


def _analyze(D: ArrayLike, tol: Tolerance) -> _Analysis:
    A = distance_matrix(D)
    n = A.shape[0]
    scale = max(1.0, float(np.max(np.abs(A))))

    B = tau(A)
    eig = sym_eigen(B)
    thr = tol.threshold(max(abs(eig.values[0]), abs(eig.values[-1])))
    psd = bool(eig.values[-1] >= -tol.threshold(eig.values[0]))
    r = int(np.count_nonzero(np.abs(eig.values) > thr))
    rank_D = numerical_rank(A, tol)
    verdict = EdmVerdict(psd, r, rank_D, 0.0 if psd else float(eig.values[-1]))
    if not psd:
        raise NotEdm(f"not a Euclidean distance matrix (tau(D) has eigenvalue {eig.values[-1]:.3g})")

    P = eig.vectors[:, :r] * np.sqrt(eig.values[:r])
    De = A.sum(axis=1)
    eDe = float(De.sum())
    # B^+ restricted to its numerical range, the same range that defines r
    proj = eig.vectors[:, :r].T @ De
    rho2 = eDe / (2 * n * n) + float(proj @ (proj / eig.values[:r])) / (4 * n * n)

    if r:
        a = np.linalg.solve(P.T @ P, P.T @ De) / (2 * n)
    else:
        a = np.zeros(0)

    # Center equation P a = 1/2 J diag(B), solved independently by least squares.
    rhs = 0.5 * (np.diag(B) - np.diag(B).mean())
    if r:
        a_ls = np.linalg.lstsq(P, rhs, rcond=None)[0]
        residual = float(np.linalg.norm(P @ a_ls - rhs))
    else:
        residual = float(np.linalg.norm(rhs))

    S = 2 * rho2 * np.ones((n, n)) - A
    w = np.linalg.eigvalsh(S)
    shift_thr = tol.threshold(w[-1])
    shift_ok = bool(w[0] >= -shift_thr)
    rank_ok = rank_D == r + 1
    near = w[0] < 0 and 0.1 * shift_thr <= -w[0] <= 10 * shift_thr
    diagnostics = SphericalDiagnostics(
        rank_test=rank_ok,
        psd_shift_test=shift_ok,
        center_residual=residual,
        center_test=bool(residual <= tol.threshold(scale)),
        psd_shift_min_eig=float(w[0]),
        indeterminate=bool(near or (rank_ok != shift_ok and eDe != 0)),
    )
    return _Analysis(A, verdict, max(rho2, 0.0), a, diagnostics)


def radius_sq(D: ArrayLike, tol: Tolerance | float | None = None) -> float:
    """Squared circumradius from the closed form in ``e'De`` and ``tau(D)^+``.

    The formula is total on EDMs; it is only a radius when ``D`` is spherical.
    """
    return _analyze(D, as_tol(tol)).radius_sq


def is_spherical(D: ArrayLike, tol: Tolerance | float | None = None) -> tuple[bool, SphericalDiagnostics]:
    """Decide sphericality with the PSD-shift test and report all three tests."""
    diag = _analyze(D, as_tol(tol)).diagnostics
    return diag.psd_shift_test, diag


def _require_spherical(D: ArrayLike, tol: Tolerance) -> _Analysis:
    an = _analyze(D, tol)
    if not an.diagnostics.psd_shift_test:
        raise NotSpherical(
            f"EDM is not spherical (rank D = {an.verdict.rank_D}, embedding dimension {an.verdict.embedding_dim})"
        )
    return an


def center(D: ArrayLike, P: ArrayLike | None = None, tol: Tolerance | float | None = None) -> NDArray[np.float64]:
    """Center ``a = (P^T P)^{-1} P^T D e / 2n`` of the circumscribing sphere.

    ``P`` defaults to :func:`~edmkit.edm.recover_configuration`; a caller
    supplied configuration must be centered and of full column rank.
    """
    tol = as_tol(tol)
    an = _require_spherical(D, tol)
    if P is None:
        return an.center
    P = np.asarray(P, dtype=np.float64)
    n = an.D.shape[0]
    De = an.D.sum(axis=1)
    if P.shape[1] == 0:
        return np.zeros(0)
    return np.linalg.solve(P.T @ P, P.T @ De) / (2 * n)


def min_shift(D: ArrayLike, tol: Tolerance | float | None = None) -> float:
    """Smallest ``lambda`` making ``lambda E - D`` PSD, i.e. twice the squared radius."""
    return 2 * _require_spherical(D, as_tol(tol)).radius_sq


def is_regular(D: ArrayLike, tol: Tolerance | float | None = None) -> bool:
    """True iff the all-ones vector is an eigenvector of the EDM ``D``.

    Regular EDMs are exactly the spherical ones centered at the centroid;
    for them ``De = 2 n rho^2 e``.
    """
    tol = as_tol(tol)
    A = distance_matrix(D)
    if not _ones_is_eigenvector(A, tol):
        return False
    _analyze(A, tol)  # raises NotEdm for non-EDMs
    return True


def _ones_is_eigenvector(A: NDArray[np.float64], tol: Tolerance) -> bool:
    De = A.sum(axis=1)
    mean = De.sum() / A.shape[0]
    scale = max(1.0, float(np.max(np.abs(De))))
    return float(np.max(np.abs(De - mean))) <= tol.rel * scale


def sphere_info(radius_sq: float, center: NDArray[np.float64] | None = None) -> SphereInfo:
    radius_sq = max(float(radius_sq), 0.0)
    return SphereInfo(float(np.sqrt(radius_sq)), radius_sq, center, 2 * radius_sq)


def classify(D: ArrayLike, tol: Tolerance | float | None = None) -> EdmClassification:
    """Full verdict on ``D``: EDM, embedding dimension, sphericality, regularity, sphere.

    The zero matrix counts as a degenerate spherical (and regular) EDM with
    radius 0 and embedding dimension 0.
    """
    tol = as_tol(tol)
    A = distance_matrix(D)
    try:
        an = _analyze(A, tol)
    except NotEdm:
        B = tau(A)
        w = np.linalg.eigvalsh(B)
        verdict = EdmVerdict(False, numerical_rank(B, tol), numerical_rank(A, tol), float(w[0]))
        return EdmClassification(verdict, False, False, None, None)

    spherical = an.diagnostics.psd_shift_test
    regular = spherical and _ones_is_eigenvector(A, tol)
    sphere = sphere_info(an.radius_sq, an.center) if spherical else None
    return EdmClassification(an.verdict, spherical, regular, sphere, an.diagnostics)
