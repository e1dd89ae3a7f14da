"""Line families, the ladder family and composite string-art scenes.

A family is a polynomial ``F(x, y, t)`` that is linear in ``x`` and ``y``;
each parameter value ``t0`` gives the line ``F(x, y, t0) = 0``.  The built-in
families also carry two anchor points (polynomials in the parameter) that
are the ends of the physical string, used for rendering and incidence
checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import ZERO, Polynomial
from .errors import (
    DegenerateMember,
    NonPositiveD,
    NonPositiveL,
    NotLinearInXY,
    OutOfRange,
    VerticalLine,
)

PolyPoint = Tuple[Polynomial, Polynomial]
Point = Tuple[Fraction, Fraction]

X = Polynomial.var("x")
Y = Polynomial.var("y")


def as_rational(value, name: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"{name} must be an exact rational, not {type(value).__name__}")
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def _positive(value, error, name):
    value = as_rational(value, name)
    if value <= 0:
        raise error(f"{name} must be positive, got {value}")
    return value


def check_linear_xy(poly: Polynomial) -> None:
    for m, _ in poly:
        deg = sum(e for v, e in m if v in ("x", "y"))
        if deg > 1:
            raise NotLinearInXY(f"family polynomial {poly} is not linear in x and y")


@dataclass(frozen=True)
class LineFamily:
    parameter: str
    poly: Polynomial
    range: Optional[Tuple[Fraction, Fraction]] = None
    label: str = ""
    anchors: Optional[Tuple[PolyPoint, PolyPoint]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.parameter in ("x", "y"):
            raise ValueError("the family parameter cannot be x or y")
        extra = set(self.poly.variables) - {"x", "y", self.parameter}
        if extra:
            raise ValueError(f"family polynomial has unexpected variables {sorted(extra)}")
        check_linear_xy(self.poly)
        a, b, _ = self.coefficients()
        if a.is_zero and b.is_zero:
            raise NotLinearInXY("family polynomial involves neither x nor y")
        if self.range is not None:
            lo, hi = (as_rational(v, "range") for v in self.range)
            if lo > hi:
                raise ValueError("empty parameter range")
            object.__setattr__(self, "range", (lo, hi))

    def coefficients(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        """``(a, b, c)`` with ``F = a*x + b*y + c``, each a polynomial in the parameter."""
        cx = self.poly.coeffs("x")
        a = cx.get(1, ZERO)
        rest = cx.get(0, ZERO)
        cy = rest.coeffs("y")
        return a, cy.get(1, ZERO), cy.get(0, ZERO)

    def line_at(self, t0) -> Tuple[Fraction, Fraction, Fraction]:
        t0 = as_rational(t0, "parameter")
        if self.range is not None and not self.range[0] <= t0 <= self.range[1]:
            raise OutOfRange(f"{self.parameter}={t0} outside {self.range}")
        at = {self.parameter: t0}
        a, b, c = (p.evaluate(at) for p in self.coefficients())
        if a == 0 and b == 0:
            raise DegenerateMember(f"family member at {self.parameter}={t0} is degenerate", t0)
        return a, b, c

    def slope(self, t0) -> Fraction:
        a, b, _ = self.line_at(t0)
        if b == 0:
            raise VerticalLine(f"member at {self.parameter}={t0} is vertical")
        return -a / b

    def segment_at(self, t0) -> Optional[Tuple[Point, Point]]:
        if self.anchors is None:
            return None
        at = {self.parameter: as_rational(t0, "parameter")}
        return tuple((px.evaluate(at), py.evaluate(at)) for px, py in self.anchors)

    def scaled(self, k) -> "LineFamily":
        return LineFamily(self.parameter, self.poly * as_rational(k), self.range, self.label, self.anchors)

    def transformed(self, rigid: "RigidMap") -> "LineFamily":
        anchors = None
        if self.anchors is not None:
            anchors = tuple(rigid.apply_poly_point(pt) for pt in self.anchors)
        return LineFamily(
            self.parameter,
            self.poly.subs(rigid.inverse_substitution()),
            self.range,
            self.label,
            anchors,
        )


def line_at(fam: LineFamily, t0) -> Tuple[Fraction, Fraction, Fraction]:
    return fam.line_at(t0)


def slope(fam: LineFamily, t0) -> Fraction:
    return fam.slope(t0)


def custom_family(poly: Polynomial, parameter: str, label: str = "custom") -> LineFamily:
    return LineFamily(parameter, poly, None, label)


def cross_family(d) -> LineFamily:
    """Lines through ``A = (n, 0)`` and ``B = (0, n - d)``, extended to full lines."""
    d = _positive(d, NonPositiveD, "d")
    n = Polynomial.var("n")
    poly = (n - d) * X + n * Y - n * n + n * d
    anchors = ((n, ZERO), (ZERO, n - d))
    return LineFamily("n", poly, None, f"cross(d={d})", anchors)


def diagonal_family(d) -> LineFamily:
    """Lines through ``C = (e, -e)`` and ``C'' = (e - d, e - d)``."""
    d = _positive(d, NonPositiveD, "d")
    e = Polynomial.var("e")
    poly = (2 * e - d) * X + d * Y - 2 * e * e + 2 * d * e
    anchors = ((e, -e), (e - d, e - d))
    return LineFamily("e", poly, None, f"diagonal(d={d})", anchors)


def corner_family(d) -> LineFamily:
    """Strings from ``(-d, k)`` on the left edge to ``(k - d, d)`` on the top edge.

    Measured from the corner ``(-d, d)`` the two joined positions sum to ``d``.
    """
    d = _positive(d, NonPositiveD, "d")
    k = Polynomial.var("k")
    poly = (k - d) * X + k * Y - k * k + d * k - d * d
    anchors = ((Polynomial.const(-d), k), (k - d, Polynomial.const(d)))
    return LineFamily("k", poly, (Fraction(0), d), f"corner(d={d})", anchors)


@dataclass(frozen=True)
class ConstrainedFamily:
    """Two-parameter line family ``F(x, y, p, q)`` with constraint ``G(p, q) = 0``."""

    parameters: Tuple[str, str]
    poly: Polynomial
    constraint: Polynomial
    label: str = ""

    def __post_init__(self):
        p, q = self.parameters
        if p == q or {p, q} & {"x", "y"}:
            raise ValueError("parameters must be two distinct names other than x, y")
        if self.constraint.involves("x") or self.constraint.involves("y"):
            raise ValueError("constraint must not involve x or y")
        extra = set(self.constraint.variables) - {p, q}
        extra |= set(self.poly.variables) - {"x", "y", p, q}
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)}")
        check_linear_xy(self.poly)


def ladder_family(L) -> ConstrainedFamily:
    """Ladder of length ``L`` with its foot at ``(p, 0)`` and top at ``(0, q)``."""
    L = _positive(L, NonPositiveL, "L")
    p = Polynomial.var("p")
    q = Polynomial.var("q")
    return ConstrainedFamily(("p", "q"), q * X + p * Y - p * q, p * p + q * q - L * L, f"ladder(L={L})")


def pythagorean_points(radius, count: int) -> List[Point]:
    """``count`` distinct rational points on ``p^2 + q^2 = radius^2`` with ``p, q > 0``.

    Uses ``p = r(1 - s^2)/(1 + s^2), q = 2rs/(1 + s^2)`` for rational ``s`` in (0, 1).
    """
    r = as_rational(radius, "radius")
    points: List[Point] = []
    seen = set()
    den = 2
    while len(points) < count:
        for num in range(1, den):
            s = Fraction(num, den)
            if s in seen:
                continue
            seen.add(s)
            w = 1 + s * s
            points.append((r * (1 - s * s) / w, 2 * r * s / w))
            if len(points) == count:
                break
        den += 1
    return points


@dataclass(frozen=True)
class RigidMap:
    """Rotation by ``quarter_turns * 90`` degrees about ``center``, then a shift."""

    quarter_turns: int = 0
    center: Point = (Fraction(0), Fraction(0))
    shift: Point = (Fraction(0), Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "quarter_turns", self.quarter_turns % 4)
        object.__setattr__(self, "center", tuple(as_rational(v) for v in self.center))
        object.__setattr__(self, "shift", tuple(as_rational(v) for v in self.shift))

    @staticmethod
    def _rotate(dx, dy, turns):
        for _ in range(turns):
            dx, dy = -dy, dx
        return dx, dy

    def apply_point(self, pt):
        cx, cy = self.center
        dx, dy = self._rotate(pt[0] - cx, pt[1] - cy, self.quarter_turns)
        return dx + cx + self.shift[0], dy + cy + self.shift[1]

    def apply_poly_point(self, pt: PolyPoint) -> PolyPoint:
        return self.apply_point(pt)

    def inverse_substitution(self):
        """Assignment ``{x: ..., y: ...}`` realising the inverse map."""
        cx, cy = self.center
        dx, dy = self._rotate(X - cx - self.shift[0], Y - cy - self.shift[1], (4 - self.quarter_turns) % 4)
        return {"x": dx + cx, "y": dy + cy}

    def apply_line(self, line):
        """Image of the line ``a*x + b*y + c = 0``."""
        a, b, c = line
        poly = (a * X + b * Y + c).subs(self.inverse_substitution())
        return poly.coeff("x", 1).constant_term, poly.coeff("y", 1).constant_term, poly.constant_term

    def apply_curve(self, curve: Polynomial) -> Polynomial:
        return curve.subs(self.inverse_substitution())


@dataclass(frozen=True)
class Scene:
    families: Tuple[LineFamily, ...]
    transforms: Tuple[RigidMap, ...]
    d: Fraction
    samples: Tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.families) != len(self.transforms):
            raise ValueError("each family needs exactly one transform")
        if as_rational(self.d) <= 0:
            raise NonPositiveD("scene scale must be positive")

    def placed(self) -> List[LineFamily]:
        return [fam.transformed(t) for fam, t in zip(self.families, self.transforms)]


def equally_spaced(lo, hi, count: int) -> Tuple[Fraction, ...]:
    lo, hi = as_rational(lo), as_rational(hi)
    if count == 1:
        return (lo,)
    step = (hi - lo) / (count - 1)
    return tuple(lo + i * step for i in range(count))


def square4_scene(d, samples: int = 17) -> Scene:
    """Four corner constructions on the square ``[-d, d]^2``, one per quadrant."""
    d = _positive(d, NonPositiveD, "d")
    fam = corner_family(d)
    maps = tuple(RigidMap(k) for k in range(4))
    return Scene((fam,) * 4, maps, d, equally_spaced(0, d, samples), f"square4(d={d})")


def single_scene(fam: LineFamily, params: Sequence, d) -> Scene:
    return Scene((fam,), (RigidMap(),), as_rational(d), tuple(as_rational(t) for t in params), fam.label)


FAMILIES = {
    "cross": cross_family,
    "diagonal": diagonal_family,
    "corner": corner_family,
}


def default_params(name: str, d) -> Tuple[Fraction, ...]:
    """Parameter samples used for figures when none are given."""
    d = as_rational(d)
    if name == "cross":
        return equally_spaced(-2 * d, 3 * d, 51)
    if name == "diagonal":
        return equally_spaced(-d / 2, 3 * d / 2, 21)
    return equally_spaced(0, d, 17)
