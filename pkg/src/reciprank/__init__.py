"""Ranking vectors and Pareto efficiency for reciprocal pairwise-comparison matrices."""

from .core import (
    DimensionMismatch,
    MonomialMatrix,
    NonPositiveEntryError,
    NotSquareError,
    ReciprocalMatrix,
    ReciprocalMatrixError,
    ReciprocityViolation,
    consistent_from_weights,
    from_upper_triangle,
    geometric_mean_vector,
    is_consistent,
    monomial_similarity,
    normalize,
    validate_reciprocal,
)
from .efficiency import (
    ComparisonDigraph,
    DominanceWitness,
    EfficiencyVerdict,
    build_digraph,
    dominance_search,
    is_efficient,
)
from .spectral import NoConvergence, SpectralResult, perron_vector, singular_vector
from .structured import (
    ConeMembership,
    build_column_perturbed,
    build_simple_perturbed,
    cone_membership,
    cycle_slack_profile,
    is_column_perturbed_consistent,
    simple_perturbed_efficiency,
)
from .simulation import SimulationConfig, SimulationReport, emit_report, run_trials
from .textio import parse_matrix, parse_vector, read_matrix, read_vector

__version__ = "0.1.0"
