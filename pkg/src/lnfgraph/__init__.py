"""Extremal 3-connected locally nonforesty graphs: formula, witnesses and exhaustive checks."""

__version__ = "0.1.0"

from .bounds import b, classify_degrees, f, lower_bound_certificate, phi, phi_min
from .canon import canonical_form
from .constructors import build_plan, case1_graph, witness
from .formats import emit_dot, emit_graph6, parse_graph6
from .graph import Graph, GraphBuilder
from .predicates import is_k_connected, is_locally_foresty, is_locally_nonforesty

__all__ = [
    "Graph", "GraphBuilder", "b", "build_plan", "canonical_form", "case1_graph",
    "classify_degrees", "emit_dot", "emit_graph6", "f", "is_k_connected",
    "is_locally_foresty", "is_locally_nonforesty", "lower_bound_certificate",
    "parse_graph6", "phi", "phi_min", "witness",
]
