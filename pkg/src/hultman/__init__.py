"""Exact verification of the five equivalent characterizations of Hultman
elements (chamber counts, Bruhat-graph distances, pseudo-inclusions,
relaxed right hulls, BP pattern avoidance) in types A and B."""

from .groups import (
    Element,
    GroupContext,
    absolute_length,
    compose,
    context,
    coxeter_length,
    cycle_pairing,
    element_from_signed,
    format_window,
    inverse,
    is_type_b_window,
    parse_element,
    signed_window,
)
from .bruhat import (
    BruhatGraph,
    bruhat_graph,
    bruhat_leq,
    directed_distance,
    interval_size,
    is_hultman,
    rank_grid,
    undirected_distance,
)
from .diagrams import (
    CoessBox,
    basic_element,
    coessential_set,
    count_reduced_words,
    coxeter_coessential,
    has_unique_reduced_word,
    hull_bounds,
    in_hull,
    is_defined_by_inclusions,
    is_defined_by_pseudo_inclusions,
    reduced_coessential,
    satisfies_relaxed_right_hull,
    satisfies_right_hull,
)
from .patterns import (
    ParabolicEmbedding,
    avoids_condition5_list,
    bp_contains,
    classical_contains,
    condition5_patterns,
    flatten,
)
from .arrangements import (
    Hyperplane,
    chamber_count,
    chamber_count_ff,
    intersection_poset,
    inversion_reflections,
)
from .classify import (
    ClassificationReport,
    classify,
    find_minimal_non_hultman,
    verify_equivalence,
    witness_table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
