"""Totally fillable simplicial complexes, Alexander duality and moment-angle decompositions."""
from .collapse import Verdict
from .complex import ComplexError, SimplicialComplex
from .duality import alexander_dual
from .filling import Budget

__version__ = "0.1.0"

__all__ = ["Budget", "ComplexError", "SimplicialComplex", "Verdict", "alexander_dual", "__version__"]
