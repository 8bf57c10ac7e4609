"""Topological sorting of digraphs and Euler circuits of undirected graphs."""

from .digraph import (
    CycleDetected,
    DiGraph,
    has_incoming_edges,
    is_acyclic,
    is_top_sorting,
    remove_vertex,
    topsort,
    valid_graph,
)
from .euler import (
    UGraph,
    defines_valid_graph,
    dfs,
    edges_of,
    euler_trail_degrees,
    find_euler_circuit,
    has_even_degrees,
    is_connected,
    is_euler_circuit,
    is_euler_trail,
    is_valid_circuit,
    is_valid_trail,
    is_valid_walk,
    rmv_edge,
    traverses_edge,
    ugraph,
)

__all__ = [
    "CycleDetected",
    "DiGraph",
    "has_incoming_edges",
    "is_acyclic",
    "is_top_sorting",
    "remove_vertex",
    "topsort",
    "valid_graph",
    "UGraph",
    "defines_valid_graph",
    "dfs",
    "edges_of",
    "euler_trail_degrees",
    "find_euler_circuit",
    "has_even_degrees",
    "is_connected",
    "is_euler_circuit",
    "is_euler_trail",
    "is_valid_circuit",
    "is_valid_trail",
    "is_valid_walk",
    "rmv_edge",
    "traverses_edge",
    "ugraph",
]
