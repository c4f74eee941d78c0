"""Constructive 5-list-coloring for graphs drawable with at most two crossings."""

from .generate import GenSpec, gen_random_instance
from .graphs import Graph, emit_graph6, parse_graph6
from .instance import Instance, dump_instance, make_instance, parse_instance
from .oracle import exact_list_color, is_k_choosable, validate_coloring
from .solver import SolveStats, solve
from .thomassen import BoundaryTask, thomassen_color

__all__ = [
    "BoundaryTask",
    "GenSpec",
    "Graph",
    "Instance",
    "SolveStats",
    "dump_instance",
    "emit_graph6",
    "exact_list_color",
    "gen_random_instance",
    "is_k_choosable",
    "make_instance",
    "parse_graph6",
    "parse_instance",
    "solve",
    "thomassen_color",
    "validate_coloring",
]
__version__ = "0.1.0"
