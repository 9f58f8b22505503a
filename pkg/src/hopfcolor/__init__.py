"""Coloring complexes of linearized Hopf monoids.

Two structure families, acyclic mixed graphs and double posets, plug into
one generic restrict/contract/product interface.  On top of it the package
builds order complexes and generalized coloring subcomplexes, counts proper
functions exactly (characteristic polynomials, h-vectors, quasisymmetric
expansions), and decides relative Cohen-Macaulayness both homologically and
through the combinatorial minor criterion.
"""

from .double_posets import DoublePoset, double_poset
from .mixed_graphs import MixedGraph, mixed_graph
from .species import Submonoid

__version__ = "0.1.0"

__all__ = [
    "DoublePoset",
    "MixedGraph",
    "Submonoid",
    "double_poset",
    "mixed_graph",
    "__version__",
]
