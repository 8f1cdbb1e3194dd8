"""Exact tools for graph minors, treewidth, brambles and grid-minor constructions."""

from .decomposition import CapExceeded, TreeDecomposition, exact_pathwidth, exact_treewidth
from .graph import Graph, TwistedPrismSpec, make_grid, make_prism, make_twisted_prism, make_wheel
from .minor import MinorModel, find_minor_model, has_minor, validate_minor_model

__all__ = [
    "CapExceeded", "Graph", "MinorModel", "TreeDecomposition", "TwistedPrismSpec",
    "exact_pathwidth", "exact_treewidth", "find_minor_model", "has_minor",
    "make_grid", "make_prism", "make_twisted_prism", "make_wheel", "validate_minor_model",
]
__version__ = "0.1.0"
