"""Exact H-function, Alexander polynomial and d-invariant computations for algebraically split L-space links."""

from .errors import FloerLinkError
from .laurent import LaurentPoly
from .lattice import HModel, HPrimeTable, eval_H, eval_h, validate

__all__ = ["FloerLinkError", "HModel", "HPrimeTable", "LaurentPoly", "eval_H", "eval_h", "validate"]
__version__ = "0.1.0"
