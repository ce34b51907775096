"""Colour patterns, clique packing numbers and minimum-degree Ramsey bounds."""

from .graph import CliqueWitness, ColourPattern, Graph, VertexColouring
from .cliques import BudgetExhausted, has_clique, k_independence_number, max_clique
from .forcing import Escaped, Forces, greedy_escape_colouring, pattern_forces, peel

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "CliqueWitness",
    "ColourPattern",
    "Escaped",
    "Forces",
    "Graph",
    "VertexColouring",
    "greedy_escape_colouring",
    "has_clique",
    "k_independence_number",
    "max_clique",
    "pattern_forces",
    "peel",
]
