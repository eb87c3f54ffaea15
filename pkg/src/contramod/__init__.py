"""Exact workbench for contramodules over finite-dimensional Hopf algebras.

Everything is finite-dimensional linear algebra over a prime field: Hopf
algebras as structure constants, comodules and contramodules with exact
validators, the induction/restriction functor calculus, and the
representation theory of the dual algebras used to certify projectivity.
"""

from .certify import Certificate, ValidationError
from .exactlin import LinearMap, QuotientPresentation, ShapeError

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ValidationError",
    "LinearMap",
    "QuotientPresentation",
    "ShapeError",
    "__version__",
]
