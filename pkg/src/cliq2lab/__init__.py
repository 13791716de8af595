"""Desk-scale lab for the double-clique approximation argument.

Small exhaustive instances of every object in the argument: double graphs
and their tests, sunflower plucking, approximated unions and products,
DeMorgan formulas with their exact and approximated set semantics, a
three-valued evaluation, and circuits with a double-rail encoding.
"""

from .approx import ac_neg, ac_pos, approx_join, approx_meet, deviation, product, product_bounded
from .bounds import bound_expressions, check_appendix_b, schedule, theorem13_threshold
from .circuits import (
    BoolCircuit,
    circuit_size,
    cliq2_rail_circuit,
    demorgan_convert,
    dmn_of_rail_circuit,
    eval_circuit,
    graph_of_rail,
    graph_of_tri,
    parse_circuit,
    rail_of_tri,
)
from .doubletests import enum_neg2, enum_pos2, in_cliq2, in_nocliq2, pos2_count_formula, test_space
from .formats import format_double_graph, format_family, parse_assignment, parse_double_graph, parse_family
from .formulas import (
    approx_set,
    cs,
    format_formula,
    deviation_chain_violations,
    lemma12_report,
    parse_formula,
    sem_set,
    theorem13_dichotomy,
    total_deviations,
)
from .graphs import DoubleGraph, Edge, complete_graph, edge_index, merge, subset_mp, subset_pm
from .params import Caps, LabError, Params, ResourceCapExceeded
from .semantics import (
    UNDEF,
    base,
    equiv_approx,
    equiv_sim,
    eval_formula,
    eval_setrep,
    formula_of,
    value_agreement_check,
    cliq2_base_check,
    lemma19_check,
    lemma20_check,
)
from .sunflower import find_sunflower, pluck

__version__ = "0.1.0"

__all__ = [
    "BoolCircuit",
    "Caps",
    "DoubleGraph",
    "Edge",
    "LabError",
    "Params",
    "ResourceCapExceeded",
    "UNDEF",
    "ac_neg",
    "ac_pos",
    "approx_join",
    "approx_meet",
    "approx_set",
    "base",
    "bound_expressions",
    "check_appendix_b",
    "circuit_size",
    "cliq2_rail_circuit",
    "complete_graph",
    "cs",
    "demorgan_convert",
    "deviation",
    "dmn_of_rail_circuit",
    "edge_index",
    "enum_neg2",
    "enum_pos2",
    "equiv_approx",
    "equiv_sim",
    "eval_circuit",
    "eval_formula",
    "eval_setrep",
    "find_sunflower",
    "format_double_graph",
    "format_family",
    "format_formula",
    "formula_of",
    "graph_of_rail",
    "graph_of_tri",
    "in_cliq2",
    "in_nocliq2",
    "deviation_chain_violations",
    "lemma12_report",
    "value_agreement_check",
    "cliq2_base_check",
    "lemma19_check",
    "lemma20_check",
    "merge",
    "parse_assignment",
    "parse_circuit",
    "parse_double_graph",
    "parse_family",
    "parse_formula",
    "pluck",
    "pos2_count_formula",
    "product",
    "product_bounded",
    "rail_of_tri",
    "schedule",
    "sem_set",
    "subset_mp",
    "subset_pm",
    "test_space",
    "theorem13_dichotomy",
    "theorem13_threshold",
    "total_deviations",
]
