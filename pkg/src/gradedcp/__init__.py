"""Exact computations and certified deciders for Z-graded rings.

Covers Leavitt path algebras of finite graphs, finite-dimensional R-systems
and corner skew Laurent polynomial rings.
"""
from .exactalg import InputError, ParseError, ResourceError
from .graph import DirectedGraph, parse_graph
from .lpa import GradedSlice, LeavittPathAlgebra, standard_system
from .verdict import CERTIFIED_NO, CERTIFIED_YES, INCONCLUSIVE, GradedVerdict

__version__ = "0.1.0"

__all__ = [
    "CERTIFIED_NO",
    "CERTIFIED_YES",
    "INCONCLUSIVE",
    "DirectedGraph",
    "GradedSlice",
    "GradedVerdict",
    "InputError",
    "LeavittPathAlgebra",
    "ParseError",
    "ResourceError",
    "parse_graph",
    "standard_system",
]
