"""Crumby red-blue colorings of subcubic graphs: construction, verification and search."""

from .graphcore import BLUE, RED, Color, Coloring, Graph, parse_graph6, write_graph6
from .verify import DEFAULT, STRICT, CrumbyPredicate, VerifyReport, verify_crumby

__all__ = [
    "BLUE", "RED", "Color", "Coloring", "Graph", "parse_graph6", "write_graph6",
    "DEFAULT", "STRICT", "CrumbyPredicate", "VerifyReport", "verify_crumby",
]
__version__ = "0.1.0"
