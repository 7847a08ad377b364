"""Pseudo-Paley graphs over finite fields: cliques, character sums and subspaces."""

from .field import Field, FieldElement, make_field, conway_polynomial
from .cyclotomy import IndexSet, SemiPrimitiveParams, semiprimitive_params, minimal_representation
from .graph import GraphSpec, build_graph, pp_graph

__version__ = "0.1.0"

__all__ = ["Field", "FieldElement", "make_field", "conway_polynomial", "IndexSet",
           "SemiPrimitiveParams", "semiprimitive_params", "minimal_representation",
           "GraphSpec", "build_graph", "pp_graph", "__version__"]
