"""Solvers, kernels, reductions and instance generators for happy colorings."""
from .graph import (
    ColoredGraph,
    Coloring,
    ContractError,
    Graph,
    HappySets,
    happy_edge_count,
    happy_vertices,
    induced_square,
    potentially_happy_sets,
)

__version__ = "0.1.0"
