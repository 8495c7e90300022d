"""Taylor joint spectra of commuting matrix contraction pairs.

The package computes the joint spectrum of a commuting pair of complex
contractions through the two-variable Koszul complex, evaluates the
pair's characteristic function, and carries the unit-ball automorphism
machinery that moves spectra around the ball. Everything is dense
numpy/scipy linear algebra at desk scale.
"""
from .charfn import (
    KernelCriterion,
    adjoint_kernel_identity_residual,
    kernel_identity_residual,
    sigma1_via_charfn,
    sigma2_via_charfn,
    sigma3_via_charfn,
    swap_halves,
    theta,
)
from .errors import (
    BadLambdaError,
    ComplexPropertyError,
    DefectSingularError,
    DimensionMismatchError,
    HypothesisError,
    NotCommutingError,
    NotContractionError,
    NotHermitianError,
    NotPSDError,
    OutsideBallError,
    ResolventSingularError,
    SingularMatrixError,
    TaylorSpecError,
    TriangularizationError,
    TupleFormatError,
    ValidationFailedError,
)
from .koszul import (
    KoszulMaps,
    SpectrumClassification,
    SpectrumPoint,
    SpectrumResult,
    classify_point,
    koszul_maps,
    koszul_maps_raw,
    laplacians,
    taylor_spectrum,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    kernel_basis,
    min_eig_hermitian,
    numerical_rank,
    psd_sqrt,
    solve,
)
from .moebius import (
    Automorphism,
    ConsistencyReport,
    block_resolvent,
    defect_transport_residuals,
    intertwining_residual,
    map_sigma1_check,
    map_sigma2_check,
    map_sigma3_check,
    omega_pair,
    phi_point,
    phi_tuple,
    phi_tuple_explicit,
)
from .pair import (
    BallPoint,
    CommutingPair,
    build_pair,
    gen_commuting_pure,
    load_pair,
    pair_from_dict,
    pair_to_dict,
    row_apply,
    save_pair,
)

__version__ = "0.1.0"
