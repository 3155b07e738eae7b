"""Closed-walk-profile isomorphism testing with an exact audit oracle."""

__version__ = "0.1.0"

from .graphs import (
    Graph,
    ParseError,
    Permutation,
    adjacency_matrix,
    apply_permutation,
    emit_edge_list,
    emit_graph6,
    parse_edge_list,
    parse_graph6,
    parse_graph_text,
)
from .isotest import Decision, StopRule, TestConfig, Verdict, iso_test
from .matrices import ExactSymMatrix, OpCounter, PowerDiagonals, power_sequence
from .oracle import BudgetExhausted, OracleResult, exact_isomorphic

__all__ = [
    "BudgetExhausted",
    "Decision",
    "ExactSymMatrix",
    "Graph",
    "OpCounter",
    "OracleResult",
    "ParseError",
    "Permutation",
    "PowerDiagonals",
    "StopRule",
    "TestConfig",
    "Verdict",
    "adjacency_matrix",
    "apply_permutation",
    "emit_edge_list",
    "emit_graph6",
    "exact_isomorphic",
    "iso_test",
    "parse_edge_list",
    "parse_graph6",
    "parse_graph_text",
    "power_sequence",
    "__version__",
]
