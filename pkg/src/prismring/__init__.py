"""Exact-arithmetic toolkit for fusion rings.

Provides fusion-ring axiom checking, character tables, pentagon-spectrum
categorification obstructions, localization polynomial systems decided by
Groebner bases, and triangular-prism equation generators.
"""

__version__ = "0.1.0"

from .fields import GF, QQ
from .groebner import buchberger, ideal_equal, ideal_is_trivial, normal_form, specialize
from .poly import Polynomial, parse_polynomial
from .rings import FusionRing, fpdim_data, parse_ring, serialize_ring, verify_axioms

__all__ = [
    "FusionRing",
    "GF",
    "Polynomial",
    "QQ",
    "buchberger",
    "fpdim_data",
    "ideal_equal",
    "ideal_is_trivial",
    "normal_form",
    "parse_polynomial",
    "parse_ring",
    "serialize_ring",
    "specialize",
    "verify_axioms",
]
