"""Time-optimal quantum evolution between pure states and the entanglement it requires."""

__version__ = "0.1.0"

from .entanglement import (
    Measure,
    case_i_closed_form,
    linear_entropy,
    multipartite_entanglement,
    time_averaged_entanglement,
)
from .errors import (
    ConfigError,
    DegeneratePathError,
    DimensionError,
    DomainError,
    ShapeError,
    SubsystemIndexError,
)
from .experiments import (
    DistributionSummary,
    ExperimentConfig,
    Subspace,
    minimize_avg_entanglement,
    run_case_studies,
    run_distribution,
)
from .geodesic import GeodesicPath, decompose, duration, evolve
from .qstate import DensityMatrix, PureState, inner_product, partial_trace, purity
from .sampling import (
    RandomSource,
    SubspaceEmbedding,
    full_basis,
    haar_unitary,
    random_orthogonal_pair,
    symmetric_basis,
)
