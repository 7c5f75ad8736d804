"""Sum uncertainty relations for non-Hermitian operators.

Evaluates four lower bounds on the variance sum of an operator pair over
a state, in the plain Dirac inner product or under a Hilbert-space metric
G, with the reduced forms available when both operators satisfy the
good-observable condition X^dag G = G X.  Ships two worked scenario
families and a CLI for sweeps and one-off checks.
"""

from .errors import (
    DegenerateEigenstateError,
    DimensionMismatchError,
    ExceptionalPointError,
    InternalInconsistencyError,
    MetricValidationError,
    NegativeNormError,
    NhurError,
    NonFiniteError,
    NotGoodObservableError,
    NotNormalizedError,
    NotOrthogonalError,
    PhaseMismatchError,
    SingularFrameError,
    ZeroVectorError,
)
from .linalg import (
    IDENTITY2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    EigenSystem,
    adjoint,
    anticommutator,
    as_operator,
    as_state,
    commutator,
    eig2,
    inner,
)
from .metric import (
    GoodObservableCheck,
    GStats,
    Metric,
    MetricReport,
    g_covariance,
    g_expectation,
    g_stats,
    g_variance,
    identity_metric,
    is_good_observable,
    metric_from_matrix,
    metric_from_right_eigenvectors,
    require_normalized,
    state_norm_sq,
    validate_metric,
)
from .relations import (
    Formalism,
    UrEvaluation,
    evaluate_all,
    ur1,
    ur2,
    ur3,
    ur4,
    ur_combined,
)
from .scenarios import (
    BROKEN,
    SYMMETRIC,
    Example1Config,
    Example2Config,
    ScenarioPoint,
    broken_eigensystem,
    build_example1,
    build_example2,
    example1_sweep,
    example2_sweep,
    pt_hamiltonian,
    sweep,
    symmetric_eigensystem,
)
from .states import (
    OrthogonalPair,
    av_orthogonal_state,
    g_complement_projection,
    g_orthogonal_complement_2d,
    superposition_state,
    ur3_default_perp,
)

__version__ = "0.1.0"

__all__ = [
    "BROKEN",
    "DegenerateEigenstateError",
    "DimensionMismatchError",
    "EigenSystem",
    "Example1Config",
    "Example2Config",
    "ExceptionalPointError",
    "Formalism",
    "GStats",
    "GoodObservableCheck",
    "IDENTITY2",
    "InternalInconsistencyError",
    "Metric",
    "MetricReport",
    "MetricValidationError",
    "NegativeNormError",
    "NhurError",
    "NonFiniteError",
    "NotGoodObservableError",
    "NotNormalizedError",
    "NotOrthogonalError",
    "OrthogonalPair",
    "PhaseMismatchError",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "ScenarioPoint",
    "SingularFrameError",
    "SYMMETRIC",
    "UrEvaluation",
    "ZeroVectorError",
    "adjoint",
    "anticommutator",
    "as_operator",
    "as_state",
    "av_orthogonal_state",
    "broken_eigensystem",
    "build_example1",
    "build_example2",
    "commutator",
    "eig2",
    "evaluate_all",
    "example1_sweep",
    "example2_sweep",
    "g_complement_projection",
    "g_covariance",
    "g_expectation",
    "g_orthogonal_complement_2d",
    "g_stats",
    "g_variance",
    "identity_metric",
    "inner",
    "is_good_observable",
    "metric_from_matrix",
    "metric_from_right_eigenvectors",
    "pt_hamiltonian",
    "require_normalized",
    "state_norm_sq",
    "superposition_state",
    "sweep",
    "symmetric_eigensystem",
    "ur1",
    "ur2",
    "ur3",
    "ur4",
    "ur3_default_perp",
    "ur_combined",
    "validate_metric",
]
