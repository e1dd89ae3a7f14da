"""Exact envelopes of string-art line families, conic classification and
symbolic proofs that the string-art curve is a parabola."""

__version__ = "0.1.0"

from .algebra import Polynomial
from .conic import ConicClass, classify, distance_profile, parabola_geometry, refute_circle
from .envelope import ImplicitCurve, envelope_constrained, envelope_unconstrained, sample_envelope_points
from .family import corner_family, cross_family, diagonal_family, ladder_family, square4_scene
from .parse import format_poly, parse_poly
from .proofs import (
    prove_calculus_identity,
    prove_discriminant,
    prove_generic_tangency,
    prove_reflection_property,
)

__all__ = [
    "ConicClass",
    "ImplicitCurve",
    "Polynomial",
    "classify",
    "corner_family",
    "cross_family",
    "diagonal_family",
    "distance_profile",
    "envelope_constrained",
    "envelope_unconstrained",
    "format_poly",
    "ladder_family",
    "parabola_geometry",
    "parse_poly",
    "prove_calculus_identity",
    "prove_discriminant",
    "prove_generic_tangency",
    "prove_reflection_property",
    "refute_circle",
    "sample_envelope_points",
    "square4_scene",
]
