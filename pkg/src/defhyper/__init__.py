"""Exact dimension and density computations for hypergraphs definable over fields."""

from .builders import SplitSet, build_example
from .errors import (
    ArityError,
    DefhyperError,
    HypothesisViolation,
    InvalidCompositeError,
    NonDominantError,
    ParseError,
    ResourceError,
    RingMismatchError,
)
from .geometry import (
    Cell,
    ConstructibleSet,
    GenericTrialPolicy,
    cell_closure,
    complement,
    dimension,
    fiber,
    generic_fiber_dimension,
    is_empty,
    projection_closure,
    projection_dimension,
)
from .groebner import Ideal, buchberger, eliminate, ideal_membership, is_trivial, normal_form, saturate
from .hypergraph import (
    DefinableHypergraph,
    density_report,
    independence_criterion,
    induce,
    is_injective,
    partial_induce,
    witness_is_independent,
)
from .maps import (
    AffineMap,
    RationalMap,
    RestrictionFamily,
    compose_affine,
    interpolation_solution_dim,
    restriction_contains,
    sample_affine,
    sample_map,
)
from .oracle import CountProfile, check_edge_free, enumerate_points, estimate_dimension
from .polycore import DEFAULT_PRIME, GREVLEX, LEX, Polynomial, PrimeField, Ring, block_order
from .scenarios import ScenarioReport, emit_report, interp_rank, verify_expansion, verify_main, verify_prints
from .specfile import emit_spec, parse_spec

__version__ = "0.1.0"
