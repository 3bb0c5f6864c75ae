"""Kronecker-sum composition of EDMs.

If ``D1`` (order m) and ``D2`` (order n) are EDMs generated by point sets
``X`` and ``Y``, then ``E_m (x) D2 + D1 (x) E_n`` is the EDM of the product
set ``X x Y``: embedding dimensions add, and for spherical factors the
squared radii add as well.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .edm import check_edm, distance_matrix
from .errors import NotEdm, TooLarge
from .linalg import DEFAULT_MAX_ORDER, Tolerance, as_tol, kron
from .spherical import SphereInfo, sphere_info


def kron_sum_edm(
    D1: ArrayLike,
    D2: ArrayLike,
    tol: Tolerance | float | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> NDArray[np.float64]:
    """Return ``E_m (x) D2 + D1 (x) E_n``.

    The second factor is the fast index: row ``s = i + n(j - 1)`` (1-based)
    pairs point ``j`` of ``D1`` with point ``i`` of ``D2``. This is the grid
    numbering, so composing two path matrices reproduces
    :func:`~edmkit.generators.manhattan_grid` bit for bit.
    """
    tol = as_tol(tol)
    A1 = distance_matrix(D1)
    A2 = distance_matrix(D2)
    m, n = A1.shape[0], A2.shape[0]
    if m * n > max_order:
        raise TooLarge(f"composed order {m * n} exceeds max order {max_order}")
    for name, A in (("first", A1), ("second", A2)):
        if not check_edm(A, tol).is_edm:
            raise NotEdm(f"{name} factor is not a Euclidean distance matrix")
    return kron(np.ones((m, m)), A2, max_order) + kron(A1, np.ones((n, n)), max_order)


def composed_sphere(s1: SphereInfo, s2: SphereInfo) -> SphereInfo:
    """Circumsphere data of a composed spherical EDM.

    Squared radii and minimal shifts add. The center is left unset because
    it depends on the frame chosen for the composed configuration;
    re-classify the composed matrix if it is needed.
    """
    return sphere_info(s1.radius_sq + s2.radius_sq)
