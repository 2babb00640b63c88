"""Exact fiber-algebra computations for module-finite Hopf algebras."""

from .arith import CycEl, field, root_of_unity, parse_element
from .linalg import Mat, Subspace

__version__ = "0.1.0"

__all__ = ["CycEl", "field", "root_of_unity", "parse_element", "Mat", "Subspace", "__version__"]
