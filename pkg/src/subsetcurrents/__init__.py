"""Exact arithmetic for subset currents on free groups.

Subgroups of a free group are represented by folded core graphs, rational
subset currents by normalized combinations of subgroup counting measures,
and the intersection functional is computed by three independent routes
that the test suite holds to exact agreement.
"""

from .automorphisms import (
    Endomorphism,
    act_on_current,
    act_on_subgroup,
    apply_word,
    is_automorphism,
    nielsen_generators,
    parse_automorphism_file,
    random_automorphism,
)
from .currents import (
    FiniteSubtree,
    RationalCurrent,
    RoundGraph,
    c_hat,
    c_hat_via_round_graphs,
    count_round_graphs,
    counting_current,
    current_to_json_dict,
    enumerate_round_graphs,
    eval_cylinder,
    functional_E,
    functional_rk,
    functional_V,
    intersection_functional_N,
    neighborhood_profile,
    neighborhood_tree,
    normalize,
    occurrence_count,
    pushforward_I,
    tree_intersection,
    zero_current,
)
from .errors import (
    EmptyCoreError,
    MismatchBugError,
    NotAutomorphismError,
    NotConnectedError,
    NotSubgroupError,
    RetryLimitError,
    SizeLimitError,
    TrivialSubgroupError,
    WordFormatError,
)
from .fiber import (
    ComponentReport,
    FiberProduct,
    classify_components,
    component_subgroup,
    fiber_product,
    intersection_number_cosets,
    intersection_number_euler,
)
from .stallings import (
    BasedCoreGraph,
    CoreGraph,
    LabeledGraph,
    canonical_key,
    canonical_key_based,
    commensurator,
    contains,
    core,
    core_based,
    finite_index,
    fold,
    from_generators,
    graph_from_json_dict,
    graph_to_dot,
    graph_to_json_dict,
    minimal_covering_quotient,
    parse_subgroup_file,
    random_finite_index_cover,
    random_reduced_word,
    random_subgroup,
    rank,
    reduced_rank,
    subgroup_generators,
)
from .words import (
    IDENTITY,
    Alphabet,
    Word,
    concat,
    cyclic_reduce,
    format_word,
    invert,
    parse_word,
    reduce_word,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BasedCoreGraph",
    "ComponentReport",
    "CoreGraph",
    "Endomorphism",
    "EmptyCoreError",
    "FiberProduct",
    "FiniteSubtree",
    "IDENTITY",
    "LabeledGraph",
    "MismatchBugError",
    "NotAutomorphismError",
    "NotConnectedError",
    "NotSubgroupError",
    "RationalCurrent",
    "RetryLimitError",
    "RoundGraph",
    "SizeLimitError",
    "TrivialSubgroupError",
    "Word",
    "WordFormatError",
    "act_on_current",
    "act_on_subgroup",
    "apply_word",
    "c_hat",
    "c_hat_via_round_graphs",
    "canonical_key",
    "canonical_key_based",
    "classify_components",
    "commensurator",
    "component_subgroup",
    "concat",
    "contains",
    "core",
    "core_based",
    "count_round_graphs",
    "counting_current",
    "current_to_json_dict",
    "cyclic_reduce",
    "enumerate_round_graphs",
    "eval_cylinder",
    "fiber_product",
    "finite_index",
    "fold",
    "format_word",
    "from_generators",
    "functional_E",
    "functional_V",
    "functional_rk",
    "graph_from_json_dict",
    "graph_to_dot",
    "graph_to_json_dict",
    "intersection_functional_N",
    "intersection_number_cosets",
    "intersection_number_euler",
    "invert",
    "is_automorphism",
    "minimal_covering_quotient",
    "neighborhood_profile",
    "neighborhood_tree",
    "nielsen_generators",
    "normalize",
    "occurrence_count",
    "parse_automorphism_file",
    "parse_subgroup_file",
    "parse_word",
    "pushforward_I",
    "random_automorphism",
    "random_finite_index_cover",
    "random_reduced_word",
    "random_subgroup",
    "rank",
    "reduced_rank",
    "subgroup_generators",
    "tree_intersection",
    "zero_current",
]
