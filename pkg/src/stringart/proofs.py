"""Symbolic verification that the string-art envelope is a parabola.

Every procedure reduces its claim to one polynomial in the family
parameter and succeeds exactly when that polynomial is identically zero.
The polynomial is kept in the report as the witness; on failure a
parameter value where it does not vanish is reported as a counterexample.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .algebra import ONE, ZERO, Polynomial, divide_exact, gcd, rational_roots
from .conic import conic_invariants
from .envelope import ImplicitCurve
from .errors import DegenerateLine, NotQuadraticAfterSubstitution, PoleCoincidence
from .family import LineFamily, as_rational
from .parse import format_poly

X = Polynomial.var("x")
Y = Polynomial.var("y")


class ProofMethod(enum.Enum):
    DISCRIMINANT = "discriminant"
    CALCULUS_IDENTITY = "calculus"
    REFLECTION = "reflection"
    GENERIC_TANGENCY = "tangency"


@dataclass(frozen=True)
class ProofReport:
    method: ProofMethod
    success: bool
    witness: Polynomial
    counterexample: Optional[Fraction] = None
    steps: Tuple[str, ...] = ()
    excluded: Tuple[Fraction, ...] = ()

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "success": self.success,
            "witness": format_poly(self.witness),
            "counterexample": None if self.counterexample is None else _rat(self.counterexample),
            "excluded": [_rat(t) for t in self.excluded],
            "steps": list(self.steps),
        }


def _rat(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


class RationalFunction:
    """Quotient of two polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = Polynomial.coerce(num)
        den = Polynomial.coerce(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def coerce(v) -> "RationalFunction":
        return v if isinstance(v, RationalFunction) else RationalFunction(v)

    def __add__(self, other):
        o = RationalFunction.coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        o = RationalFunction.coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.coerce(other)
        if o.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def reduced(self) -> "RationalFunction":
        g = gcd(self.num, self.den)
        return RationalFunction(divide_exact(self.num, g), divide_exact(self.den, g))

    def __repr__(self):
        return f"RationalFunction({format_poly(self.num)!r}, {format_poly(self.den)!r})"


@dataclass(frozen=True)
class TangentLine:
    """The line ``y = slope * x + intercept``; both entries are polynomials in ``parameter``."""

    slope: Polynomial
    intercept: Polynomial
    parameter: str = "t"

    def as_poly(self) -> Polynomial:
        return self.slope * X + self.intercept - Y


def _parabola(d: Fraction) -> Polynomial:
    """``-x^2/(2d) - d/2`` as a polynomial in x."""
    return X * X * Fraction(-1, 2 * d) - d / 2


def _counterexample(witness: Polynomial, var: str, avoid=()) -> Optional[Fraction]:
    if witness.is_zero:
        return None
    if set(witness.variables) - {var}:
        return None
    for k in range(0, 64):
        for t in ((Fraction(k),) if k == 0 else (Fraction(k), Fraction(-k))):
            if t not in avoid and witness.evaluate({var: t}) != 0:
                return t
    return None


def _roots(p: Polynomial, var: str) -> Tuple[Fraction, ...]:
    if p.is_zero or p.is_constant:
        return ()
    if set(p.variables) - {var}:
        return ()
    return tuple(rational_roots(p, var))


def string_slope_intercept(d) -> TangentLine:
    """Slope and intercept of the string through ``(e, -e)`` and ``(e - d, e - d)``.

    Solves ``-e = a*e + b`` and ``e - d = a*(e - d) + b`` by Cramer's rule.
    """
    d = as_rational(d, "d")
    e = Polynomial.var("e")
    # rows: [x_i, 1] [a, b]^T = y_i
    x1, y1 = e, -e
    x2, y2 = e - d, e - d
    det = x1 - x2
    a = divide_exact(y1 - y2, det)
    b = divide_exact(x1 * y2 - x2 * y1, det)
    return TangentLine(a, b, "e")


def prove_discriminant(d, line: Optional[TangentLine] = None) -> ProofReport:
    """The string meets ``y = -x^2/(2d) - d/2`` in a double point.

    Intersecting gives ``x^2/(2d) + a*x + (b + d/2) = 0``; its discriminant
    ``a^2 - 2b/d - 1`` must vanish identically in the parameter.
    """
    d = as_rational(d, "d")
    if line is None:
        line = string_slope_intercept(d)
    qa = Polynomial.const(Fraction(1, 2 * d))
    qb = line.slope
    qc = line.intercept + d / 2
    witness = qb * qb - 4 * qa * qc
    steps = (
        f"string: y = ({format_poly(line.slope)})*x + ({format_poly(line.intercept)})",
        f"parabola: y = {format_poly(_parabola(d))}",
        f"intersection: ({format_poly(qa)})*x^2 + ({format_poly(qb)})*x + ({format_poly(qc)}) = 0",
        f"discriminant: {format_poly(witness)}",
    )
    return ProofReport(
        ProofMethod.DISCRIMINANT,
        witness.is_zero,
        witness,
        _counterexample(witness, line.parameter),
        steps,
    )


def tangent_line_at(d) -> TangentLine:
    """Tangent of ``y = -x^2/(2d) - d/2`` at ``x = t``."""
    d = as_rational(d, "d")
    t = Polynomial.var("t")
    f = _parabola(d)
    slope = f.derivative("x").subs({"x": t})
    intercept = f.subs({"x": t}) - slope * t
    return TangentLine(slope, intercept, "t")


def prove_calculus_identity(
    d,
    tangent: Optional[TangentLine] = None,
    x_c: Optional[RationalFunction] = None,
    x_cpp: Optional[RationalFunction] = None,
) -> ProofReport:
    """The tangent meets ``y = -x`` and ``y = x`` at abscissas differing by exactly ``d``."""
    d = as_rational(d, "d")
    if tangent is None:
        tangent = tangent_line_at(d)
    a, b = tangent.slope, tangent.intercept
    # a tangent parallel to a diagonal for every parameter never meets it
    for name, den, given in (("x_C", -a - 1, x_c), ("x_C''", 1 - a, x_cpp)):
        if given is None and den.is_zero:
            raise PoleCoincidence(f"{name} has an identically vanishing denominator")
    if x_c is None:
        x_c = RationalFunction(b, -a - 1)
    if x_cpp is None:
        x_cpp = RationalFunction(b, 1 - a)
    diff = x_c - d - x_cpp
    witness = diff.num
    var = tangent.parameter
    excluded = tuple(sorted(set(_roots(x_c.den, var)) | set(_roots(x_cpp.den, var))))
    steps = (
        f"tangent: y = ({format_poly(a)})*x + ({format_poly(b)})",
        f"x_C = ({format_poly(x_c.num)})/({format_poly(x_c.den)})",
        f"x_C'' = ({format_poly(x_cpp.num)})/({format_poly(x_cpp.den)})",
        f"numerator of x_C - {_rat(d)} - x_C'': {format_poly(witness)}",
        "excluded (tangent parallel to a diagonal): "
        + (", ".join(f"{var}={_rat(t)}" for t in excluded) or "none"),
    )
    return ProofReport(
        ProofMethod.CALCULUS_IDENTITY,
        witness.is_zero,
        witness,
        _counterexample(witness, var, excluded),
        steps,
        excluded,
    )


def _substitute_line(P: Polynomial, keep: str, lin_keep: Polynomial, lin_elim: Polynomial, const: Polynomial):
    """``lin_elim**2 * P`` with the eliminated coordinate replaced from the line.

    The line is ``lin_keep*keep + lin_elim*other + const = 0``.
    """
    other = "y" if keep == "x" else "x"
    kv = Polynomial.var(keep)
    image = -(lin_keep * kv + const)
    out = ZERO
    for m, c in P:
        exps = dict(m)
        i = exps.get(keep, 0)
        j = exps.get(other, 0)
        out = out + (kv ** i) * (image ** j) * (lin_elim ** (2 - j)) * c
    return out


def prove_generic_tangency(curve, fam: LineFamily) -> ProofReport:
    """Every member of the family meets the conic in a double point."""
    P = curve.poly if isinstance(curve, ImplicitCurve) else curve
    conic_invariants(P)
    a, b, c = fam.coefficients()
    t = fam.parameter
    if not b.is_zero:
        keep, lin_keep, lin_elim = "x", a, b
    else:
        keep, lin_keep, lin_elim = "y", b, a
    Q = _substitute_line(P, keep, lin_keep, lin_elim, c)
    coeffs = Q.coeffs(keep)
    qa = coeffs.get(2, ZERO)
    if qa.is_zero:
        raise NotQuadraticAfterSubstitution(
            "substituting the family line leaves no quadratic term; members are parallel to an asymptotic direction"
        )
    qb = coeffs.get(1, ZERO)
    qc = coeffs.get(0, ZERO)
    witness = qb * qb - 4 * qa * qc
    excluded = tuple(sorted(set(_roots(lin_elim, t)) | set(_roots(qa, t))))
    other = "y" if keep == "x" else "x"
    steps = (
        f"curve: {format_poly(P)} = 0",
        f"family: {format_poly(fam.poly)} = 0, solved for {other}",
        f"after substitution: ({format_poly(qa)})*{keep}^2 + ({format_poly(qb)})*{keep} + ({format_poly(qc)})",
        f"discriminant: {format_poly(witness)}",
        "excluded degenerate positions: " + (", ".join(f"{t}={_rat(v)}" for v in excluded) or "none"),
    )
    return ProofReport(
        ProofMethod.GENERIC_TANGENCY,
        witness.is_zero,
        witness,
        _counterexample(witness, t, excluded),
        steps,
        excluded,
    )


def reflect_point(pt, line) -> Tuple[Fraction, Fraction]:
    """Mirror image of ``pt`` across ``a*x + b*y + c = 0``."""
    a, b, c = (as_rational(v) for v in line)
    if a == 0 and b == 0:
        raise DegenerateLine("line has a = b = 0")
    x0, y0 = (as_rational(v) for v in pt)
    k = 2 * (a * x0 + b * y0 + c) / (a * a + b * b)
    return x0 - k * a, y0 - k * b


def prove_reflection_property(fam: LineFamily, focus, directrix) -> ProofReport:
    """Reflecting the focus across any member lands on the directrix."""
    al, be, ga = (as_rational(v) for v in directrix)
    if al == 0 and be == 0:
        raise DegenerateLine("directrix has a = b = 0")
    fx, fy = (as_rational(v) for v in focus)
    a, b, c = fam.coefficients()
    t = fam.parameter
    norm = a * a + b * b
    s = a * fx + b * fy + c
    image_x = RationalFunction(norm * fx - 2 * s * a, norm)
    image_y = RationalFunction(norm * fy - 2 * s * b, norm)
    on_line = image_x * al + image_y * be + ga
    witness = on_line.num
    excluded = _roots(gcd(a, b), t) if not (a.is_zero or b.is_zero) else _roots(a if b.is_zero else b, t)
    steps = (
        f"member: {format_poly(fam.poly)} = 0",
        f"focus: ({_rat(fx)}, {_rat(fy)}); directrix: {format_poly(al * X + be * Y + ga)} = 0",
        f"mirror image: (({format_poly(image_x.num)})/({format_poly(norm)}), "
        f"({format_poly(image_y.num)})/({format_poly(norm)}))",
        f"directrix at the image, numerator: {format_poly(witness)}",
        "excluded degenerate members: " + (", ".join(f"{t}={_rat(v)}" for v in excluded) or "none"),
    )
    return ProofReport(
        ProofMethod.REFLECTION,
        witness.is_zero,
        witness,
        _counterexample(witness, t, excluded),
        steps,
        tuple(excluded),
    )
