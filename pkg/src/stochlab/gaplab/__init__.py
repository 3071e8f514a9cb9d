"""Interchange, exclusion, walk, and shuffle generators on weighted graphs,
with spectral-gap identity checks, network reduction, and the hub
comparison form."""

from .generators import (
    DENSE_STATE_LIMIT,
    GeneratorOperator,
    alpha_shuffle_generator,
    alpha_single_particle_rates,
    exclusion_generator,
    interchange_generator,
    rw_generator,
)
from .graphs import (
    CapacityError,
    GraphFormatError,
    HyperWeights,
    Network,
    WeightedGraph,
    complete_graph,
    connected_graph_representatives,
    cycle_graph,
    format_network,
    parse_graph_file,
    parse_network,
    path_graph,
    random_connected_graph,
    random_hyperweights,
    single_edge,
    star_graph,
)
from .reduction import (
    embedded_reduced_graph,
    octopus_form,
    reduce_vertex,
    reduced_interchange_generator,
)
from .report import DEFAULT_RTOL, GapReport, gap_report, shuffle_gap_comparison
from .spectral import (
    DEFAULT_TOL_ZERO,
    ReducibilityError,
    dirichlet_form,
    extreme_eigenvalues,
    spectral_gap,
    variance,
    zero_eigenvalue_count,
)

__all__ = [
    "CapacityError",
    "DEFAULT_RTOL",
    "DEFAULT_TOL_ZERO",
    "DENSE_STATE_LIMIT",
    "GapReport",
    "GeneratorOperator",
    "GraphFormatError",
    "HyperWeights",
    "Network",
    "ReducibilityError",
    "WeightedGraph",
    "alpha_shuffle_generator",
    "alpha_single_particle_rates",
    "complete_graph",
    "connected_graph_representatives",
    "cycle_graph",
    "dirichlet_form",
    "embedded_reduced_graph",
    "exclusion_generator",
    "extreme_eigenvalues",
    "format_network",
    "gap_report",
    "interchange_generator",
    "octopus_form",
    "parse_graph_file",
    "parse_network",
    "path_graph",
    "random_connected_graph",
    "random_hyperweights",
    "reduce_vertex",
    "reduced_interchange_generator",
    "rw_generator",
    "shuffle_gap_comparison",
    "single_edge",
    "spectral_gap",
    "star_graph",
    "variance",
    "zero_eigenvalue_count",
]
