"""Bounds on lattice constants, mechanical checks of their numeric proof steps,
and a small lattice reduction engine for empirical comparison."""

from .bounds import BoundValue, ValidityError
from .specfun import DomainError, Estimate, PrecisionPolicy

__version__ = "0.1.0"

__all__ = ["BoundValue", "DomainError", "Estimate", "PrecisionPolicy", "ValidityError", "__version__"]
