"""Exact rational polynomial arithmetic and elimination primitives."""

from .elimination import (
    bareiss_det,
    content_in,
    gcd,
    gcd_univariate,
    monomial_content,
    normalize,
    primitive_in,
    primitive_part,
    pseudo_remainder,
    rational_content,
    rational_roots,
    resultant,
    square_free,
    strip_monomial_factor,
    sylvester_matrix,
)
from .polynomial import ONE, ZERO, Polynomial, divide_exact, divides, from_univariate, var_rank


def add(p, q):
    return Polynomial.coerce(p) + Polynomial.coerce(q)


def mul(p, q):
    return Polynomial.coerce(p) * Polynomial.coerce(q)


def derivative(p, v):
    return Polynomial.coerce(p).derivative(v)


def eval_partial(p, assignment):
    """Substitute polynomials for some variables; the rest pass through."""
    return Polynomial.coerce(p).subs(assignment)


__all__ = [
    "ONE",
    "ZERO",
    "Polynomial",
    "add",
    "bareiss_det",
    "content_in",
    "derivative",
    "divide_exact",
    "divides",
    "eval_partial",
    "from_univariate",
    "gcd",
    "gcd_univariate",
    "monomial_content",
    "mul",
    "normalize",
    "primitive_in",
    "primitive_part",
    "pseudo_remainder",
    "rational_content",
    "rational_roots",
    "resultant",
    "square_free",
    "strip_monomial_factor",
    "sylvester_matrix",
    "var_rank",
]
