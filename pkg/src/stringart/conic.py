"""Conic classification, parabola geometry and exact distance profiles."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .algebra import Polynomial
from .envelope import ImplicitCurve
from .errors import DegenerateLine, DegenerateMember, NotDegreeTwo, NotParabola
from .family import LineFamily, as_rational

TOLERANCE = 1e-9


class ConicClass(enum.Enum):
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    TWO_INTERSECTING_LINES = "two-intersecting-lines"
    TWO_PARALLEL_LINES = "two-parallel-lines"
    COINCIDENT_LINES = "coincident-lines"
    SINGLE_POINT = "single-point"
    EMPTY_SET = "empty-set"


@dataclass(frozen=True)
class ConicInvariants:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    E: Fraction
    F: Fraction
    delta: Fraction
    det3: Fraction

    @classmethod
    def from_coefficients(cls, A, B, C, D, E, F) -> "ConicInvariants":
        A, B, C, D, E, F = (Fraction(v) for v in (A, B, C, D, E, F))
        delta = B * B - 4 * A * C
        # det [[A, B/2, D/2], [B/2, C, E/2], [D/2, E/2, F]]
        det3 = A * C * F + B * E * D / 4 - A * E * E / 4 - C * D * D / 4 - F * B * B / 4
        return cls(A, B, C, D, E, F, delta, det3)

    @property
    def matrix(self):
        A, B, C, D, E, F = self.A, self.B, self.C, self.D, self.E, self.F
        return ((A, B / 2, D / 2), (B / 2, C, E / 2), (D / 2, E / 2, F))


CurveLike = Union[ImplicitCurve, Polynomial]


def _poly(curve: CurveLike) -> Polynomial:
    return curve.poly if isinstance(curve, ImplicitCurve) else curve


def conic_invariants(curve: CurveLike) -> ConicInvariants:
    p = _poly(curve)
    extra = set(p.variables) - {"x", "y"}
    if extra:
        raise NotDegreeTwo(f"curve involves {sorted(extra)} besides x and y")
    if p.total_degree != 2:
        raise NotDegreeTwo(f"curve has total degree {p.total_degree}, expected 2")

    def c(*mono):
        return p.terms.get(tuple(mono), Fraction(0))

    return ConicInvariants.from_coefficients(
        c(("x", 2)), c(("x", 1), ("y", 1)), c(("y", 2)), c(("x", 1)), c(("y", 1)), c()
    )


def classify(curve: CurveLike) -> ConicClass:
    """Real affine type of a degree-two curve, decided exactly.

    >>> from stringart.parse import parse_poly
    >>> classify(parse_poly("x^2+2*x*y+y^2-20*x+20*y+100")).value
    'parabola'
    """
    inv = conic_invariants(curve)
    A, B, C = inv.A, inv.B, inv.C
    if inv.det3 != 0:
        if inv.delta < 0:
            if (A + C) * inv.det3 > 0:
                return ConicClass.EMPTY_SET
            if B == 0 and A == C:
                return ConicClass.CIRCLE
            return ConicClass.ELLIPSE
        if inv.delta == 0:
            return ConicClass.PARABOLA
        return ConicClass.HYPERBOLA
    if inv.delta < 0:
        return ConicClass.SINGLE_POINT
    if inv.delta > 0:
        return ConicClass.TWO_INTERSECTING_LINES
    # rank-one quadratic part: the sum of the principal 2x2 minors involving F decides
    k = A * inv.F - inv.D * inv.D / 4 + C * inv.F - inv.E * inv.E / 4
    if k < 0:
        return ConicClass.TWO_PARALLEL_LINES
    if k == 0:
        return ConicClass.COINCIDENT_LINES
    return ConicClass.EMPTY_SET


@dataclass(frozen=True)
class ParabolaGeometry:
    """Numeric focus, directrix and vertex of a parabola.

    The directrix is ``normal . X + offset = 0`` with a unit normal pointing
    from the directrix towards the focus.
    """

    focus: Tuple[float, float]
    directrix_normal: Tuple[float, float]
    directrix_offset: float
    vertex: Tuple[float, float]
    axis: Tuple[float, float]
    tolerance: float = TOLERANCE

    @property
    def directrix(self) -> Tuple[float, float, float]:
        return (*self.directrix_normal, self.directrix_offset)

    def distance_to_focus(self, pt) -> float:
        return math.hypot(pt[0] - self.focus[0], pt[1] - self.focus[1])

    def distance_to_directrix(self, pt) -> float:
        n = self.directrix_normal
        return abs(n[0] * pt[0] + n[1] * pt[1] + self.directrix_offset)


def parabola_geometry(curve: CurveLike) -> ParabolaGeometry:
    if classify(curve) is not ConicClass.PARABOLA:
        raise NotParabola("curve is not a parabola")
    inv = conic_invariants(curve)
    A, B, C, D, E, F = (float(v) for v in (inv.A, inv.B, inv.C, inv.D, inv.E, inv.F))
    # rotate by theta so the cross term vanishes: u = x cos + y sin, v = -x sin + y cos
    theta = 0.5 * math.atan2(B, A - C)
    cs, sn = math.cos(theta), math.sin(theta)
    A2 = A * cs * cs + B * cs * sn + C * sn * sn
    C2 = A * sn * sn - B * cs * sn + C * cs * cs
    D2 = D * cs + E * sn
    E2 = -D * sn + E * cs
    # exactly one of A2, C2 is (numerically) zero; arrange for the squared coordinate to be s
    if abs(A2) >= abs(C2):
        # A2 s^2 + D2 s + E2 w + F = 0 with (s, w) = (u, v)
        a, lin_s, lin_w = A2, D2, E2
        to_xy = lambda s, w: (s * cs - w * sn, s * sn + w * cs)  # noqa: E731
        w_axis = (-sn, cs)
    else:
        a, lin_s, lin_w = C2, E2, D2
        to_xy = lambda s, w: (w * cs - s * sn, w * sn + s * cs)  # noqa: E731
        w_axis = (cs, sn)
    if lin_w == 0.0:
        raise NotParabola("degenerate parabola")
    s0 = -lin_s / (2 * a)
    w0 = (lin_s * lin_s / (4 * a) - F) / lin_w
    # (s - s0)^2 = 4 f (w - w0)
    f = -lin_w / (4 * a)
    sign = 1.0 if f > 0 else -1.0
    axis = (w_axis[0] * sign, w_axis[1] * sign)
    vertex = to_xy(s0, w0)
    focus = to_xy(s0, w0 + f)
    foot = to_xy(s0, w0 - f)
    offset = -(axis[0] * foot[0] + axis[1] * foot[1])
    return ParabolaGeometry(_clean(focus), _clean(axis), _clean1(offset), _clean(vertex), _clean(axis))


def _clean1(v: float) -> float:
    return 0.0 if abs(v) < 1e-15 else v


def _clean(pt):
    return (_clean1(pt[0]), _clean1(pt[1]))


def point_line_distance_sq(point, line) -> Fraction:
    """Exact squared distance from ``point`` to ``a*x + b*y + c = 0``."""
    a, b, c = (as_rational(v) for v in line)
    if a == 0 and b == 0:
        raise DegenerateLine("line has a = b = 0")
    x0, y0 = (as_rational(v) for v in point)
    s = a * x0 + b * y0 + c
    return s * s / (a * a + b * b)


@dataclass(frozen=True)
class DistanceProfile:
    entries: Tuple[Tuple[Fraction, Fraction], ...]
    min_sq: Fraction
    max_sq: Fraction

    @property
    def ratio_sq(self) -> Fraction:
        if self.min_sq == 0:
            raise ZeroDivisionError("a member passes through the center; the ratio is undefined")
        return self.max_sq / self.min_sq

    @property
    def argmin(self) -> Fraction:
        return next(t for t, v in self.entries if v == self.min_sq)

    @property
    def argmax(self) -> Fraction:
        return next(t for t, v in self.entries if v == self.max_sq)


def distance_profile(fam: LineFamily, center, params: Sequence) -> DistanceProfile:
    if not params:
        raise ValueError("at least one parameter value is required")
    entries = []
    for t in params:
        t = as_rational(t, "parameter")
        try:
            line = fam.line_at(t)
        except DegenerateMember as exc:
            raise DegenerateLine(str(exc), t) from None
        entries.append((t, point_line_distance_sq(center, line)))
    values = [v for _, v in entries]
    return DistanceProfile(tuple(entries), min(values), max(values))


@dataclass(frozen=True)
class CircleRefutation:
    circle_compatible: bool
    profile: DistanceProfile
    witness: Tuple[Fraction, Fraction]
    insufficient_evidence: bool

    @property
    def ratio_sq(self) -> Fraction:
        return self.profile.ratio_sq


def refute_circle(fam: LineFamily, center, params: Sequence) -> CircleRefutation:
    """Test whether the sampled members can all be tangents of one circle about ``center``.

    Tangents of a circle are all equally far from its center, so two members
    at different distances refute the circle hypothesis.  The witness is the
    pair of parameters attaining the minimum and maximum distance.
    """
    if len(params) < 2:
        raise ValueError("refuting a circle needs at least two parameter values")
    profile = distance_profile(fam, center, params)
    distinct = len({as_rational(t) for t in params}) >= 2
    compatible = profile.min_sq == profile.max_sq
    return CircleRefutation(compatible, profile, (profile.argmin, profile.argmax), not distinct)


def curve_points(curve: CurveLike, xs: Sequence[float]) -> List[Tuple[float, float]]:
    """Real points of a conic above the given abscissas (quadratic formula in y)."""
    inv = conic_invariants(curve)
    A, B, C, D, E, F = (float(v) for v in (inv.A, inv.B, inv.C, inv.D, inv.E, inv.F))
    out = []
    for x in xs:
        qa = C
        qb = B * x + E
        qc = A * x * x + D * x + F
        if qa == 0.0:
            if qb != 0.0:
                out.append((x, -qc / qb))
            continue
        disc = qb * qb - 4 * qa * qc
        if disc < 0:
            continue
        r = math.sqrt(disc)
        out.append((x, (-qb + r) / (2 * qa)))
        if r > 0:
            out.append((x, (-qb - r) / (2 * qa)))
    return out
