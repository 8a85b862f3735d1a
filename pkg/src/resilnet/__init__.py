"""Graph-based resilience analysis for water distribution networks."""

from .graph import Graph, build_graph
from .io import parse_edge_list, parse_inp, prune_leaves, read_graph

__version__ = "0.1.0"

__all__ = ["Graph", "build_graph", "parse_edge_list", "parse_inp", "prune_leaves",
           "read_graph", "__version__"]
