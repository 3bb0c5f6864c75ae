"""Recognize, classify, generate and compose Euclidean distance matrices.

Also provides a QAP lower bound for spherical distance matrices.
"""

__version__ = "0.1.0"

from .composition import composed_sphere, kron_sum_edm
from .edm import (
    EdmVerdict,
    centering_projector,
    check_edm,
    distance_matrix,
    kappa,
    pairwise_sq_distances,
    recover_configuration,
    tau,
)
from .errors import (
    DegenerateSample,
    EdmError,
    InvalidMatrix,
    InvalidPartition,
    InvalidPermutation,
    NotCentered,
    NotEdm,
    NotSpherical,
    TooLarge,
)
from .generators import (
    GridIndexMap,
    collinear_sq_edm,
    hypercube_hamming,
    manhattan_grid,
    path_edm,
    random_spherical_edm,
)
from .linalg import (
    EigenDecomposition,
    Tolerance,
    is_psd,
    kron,
    numerical_rank,
    pinv,
    schur_psd_test,
    sym_eigen,
    sym_matrix,
)
from .qap import QapBoundReport, QapInstance, qap_brute_force, qap_objective, qap_shift_lower_bound
from .spherical import (
    EdmClassification,
    SphereInfo,
    SphericalDiagnostics,
    center,
    classify,
    is_regular,
    is_spherical,
    min_shift,
    radius_sq,
)
