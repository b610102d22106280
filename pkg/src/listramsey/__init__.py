"""Exact tools for Ramsey and list-Ramsey properties of sparse graphs.

Densities are exact fractions, Ramsey questions are decided by a
hypergraph list-colouring search, and the explicit colourings and witness
constructions for sparse hosts are checked against that search.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import DomainError, FalsificationError, OrderingError, ResourceError
from .graph import Graph, GraphFamily, named_graph

__all__ = ["DomainError", "FalsificationError", "Graph", "GraphFamily", "OrderingError", "ResourceError",
           "named_graph", "__version__"]
