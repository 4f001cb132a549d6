"""p-adic path integrals: characters, polytopes, function rings, periods and chains."""

from .calculus import Form, integrate, integrate_interval
from .characters import Character, Registry, default_registry
from .funcring import PolyFunction, gauss_norm, invert_unit, unit_decompose
from .localfield import FieldConfig, PadicScalar
from .periods import Period
from .polytope import AffineMap, Polytope

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "Character",
    "FieldConfig",
    "Form",
    "PadicScalar",
    "Period",
    "PolyFunction",
    "Polytope",
    "Registry",
    "default_registry",
    "gauss_norm",
    "integrate",
    "integrate_interval",
    "invert_unit",
    "unit_decompose",
]
