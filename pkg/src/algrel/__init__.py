"""Exact reliability and bounds for multi-state coherent systems via monomial ideals."""
from .builders import (
    Graph,
    KofNSpec,
    barabasi_albert,
    build_kofn,
    build_network,
    build_parallel,
    build_series,
    erdos_renyi,
    network_minimal_paths,
)
from .duality import alexander_dual, boundary_dual
from .errors import AlgrelError, PreconditionError, ResourceLimitError, SchemaError, UnsupportedRouteError
from .monomial import MonomialIdeal, colon_by_monomial, contains, divides, intersect, lcm, minimalize
from .oracle import OracleResult, exhaustive_probability, monte_carlo_probability
from .probability import Bound, ProbabilityTable, evaluate, evaluate_bounds, pr, pr_bar
from .resolution import HilbertNumerator, SignedSummand, mayer_vietoris_numerator, taylor_numerator, truncate
from .system import CoherentSystem
from .systemfile import load_system, system_from_dict, system_to_dict

__version__ = "0.1.0"
