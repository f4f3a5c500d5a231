"""Chordal and perfect partitions, quotient graphs, and the recursive
counterexample families, with exhaustive certification on small instances."""

from .construct import (
    CliqueFamily,
    ConstructionResult,
    build_chordal,
    build_general,
    build_perfect,
    clique_order_table,
    enumerate_clique_families,
    predict,
    s_bound,
    t_bound,
    theorem_clique_order,
)
from .decomposition import TreeDecomposition, attach_copy, attach_gadget_bag, bag_containing, validate, width
from .errors import (
    ChordpartError,
    DecompositionError,
    GraphError,
    ParseError,
    PartitionError,
    ResourceCapError,
    RestrictionError,
)
from .graph import (
    Graph,
    are_isomorphic,
    complement,
    components,
    contains_induced,
    enumerate_cliques,
    induced_embedding,
    induced_subgraph,
    is_clique,
    make_graph,
)
from .partition import (
    Partition,
    check_restriction_precondition,
    enumerate_connected_partitions,
    is_connected_partition,
    make_partition,
    outcome_clique_spread,
    outcome_part_clique,
    quotient,
    restrict,
)
from .recognition import (
    chromatic_number,
    find_induced_long_cycle,
    is_chordal,
    is_perfect_small,
    max_clique_size,
)
from .verify import (
    VerificationReport,
    search_partition,
    verify_chordal_lemma,
    verify_general_lemma,
    verify_perfect_lemma,
)

__version__ = "0.1.0"

__all__ = [
    "ChordpartError",
    "CliqueFamily",
    "ConstructionResult",
    "DecompositionError",
    "Graph",
    "GraphError",
    "ParseError",
    "Partition",
    "PartitionError",
    "ResourceCapError",
    "RestrictionError",
    "TreeDecomposition",
    "VerificationReport",
    "are_isomorphic",
    "attach_copy",
    "attach_gadget_bag",
    "bag_containing",
    "build_chordal",
    "build_general",
    "build_perfect",
    "check_restriction_precondition",
    "chromatic_number",
    "clique_order_table",
    "complement",
    "components",
    "contains_induced",
    "enumerate_clique_families",
    "enumerate_cliques",
    "enumerate_connected_partitions",
    "find_induced_long_cycle",
    "induced_embedding",
    "induced_subgraph",
    "is_chordal",
    "is_clique",
    "is_connected_partition",
    "is_perfect_small",
    "make_graph",
    "make_partition",
    "max_clique_size",
    "outcome_clique_spread",
    "outcome_part_clique",
    "predict",
    "quotient",
    "restrict",
    "s_bound",
    "search_partition",
    "t_bound",
    "theorem_clique_order",
    "validate",
    "verify_chordal_lemma",
    "verify_general_lemma",
    "verify_perfect_lemma",
    "width",
]
