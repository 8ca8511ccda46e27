"""Exact computations with Gamma-admissible cones and fans over rank-one valuation rings."""
from .cones import GammaCone, finite_type_check, is_admissible, slice, special_fiber_census
from .fans import GammaFan, complete_extension, is_complete, refine_to_complete, validate_fan
from .scalar import Scalar, format_scalar, parse_scalar
from .valuegroup import ValueGroup, gamma_contains

__all__ = [
    "GammaCone",
    "GammaFan",
    "Scalar",
    "ValueGroup",
    "complete_extension",
    "finite_type_check",
    "format_scalar",
    "gamma_contains",
    "is_admissible",
    "is_complete",
    "parse_scalar",
    "refine_to_complete",
    "slice",
    "special_fiber_census",
    "validate_fan",
]
