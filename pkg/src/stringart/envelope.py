"""Envelopes of line families by resultant elimination.

For a one-parameter family the envelope is the discriminant set of
``F = 0, dF/dt = 0``.  For a constrained two-parameter family the tangency
condition is the Jacobian ``det d(F, G)/d(p, q) = 0`` and both parameters are
eliminated one after the other.  The eliminant is then normalized: rational
content, common monomial factors and repeated factors are removed, and the
result is checked against exactly computed contact points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import (
    Polynomial,
    monomial_content,
    primitive_part,
    resultant,
    square_free,
    strip_monomial_factor,
)
from .errors import (
    BothConstantInV,
    ConstraintDegenerate,
    LinearInParameter,
    NoUniqueContact,
    StringArtError,
)
from .family import ConstrainedFamily, LineFamily, as_rational
from .parse import format_monomial, format_poly

# parameter values used to validate pruning when the caller gives none
_CHECK_PARAMS = tuple(Fraction(n, d) for n, d in [(-3, 1), (-2, 1), (-1, 2), (1, 3), (1, 1), (5, 2), (7, 1)])


@dataclass(frozen=True)
class ImplicitCurve:
    poly: Polynomial

    def __post_init__(self):
        if self.poly.is_zero:
            raise ValueError("an implicit curve needs a nonzero polynomial")
        extra = set(self.poly.variables) - {"x", "y"}
        if extra:
            raise ValueError(f"curve polynomial involves {sorted(extra)} besides x and y")
        if primitive_part(self.poly) != self.poly:
            raise ValueError("curve polynomial must be primitive and sign-normalized")

    @classmethod
    def from_poly(cls, poly: Polynomial) -> "ImplicitCurve":
        return cls(primitive_part(poly))

    @property
    def degree(self) -> int:
        return self.poly.total_degree

    def __call__(self, x, y) -> Fraction:
        return self.poly.evaluate({"x": x, "y": y})

    def __str__(self) -> str:
        return format_poly(self.poly)


@dataclass(frozen=True)
class EnvelopeResult:
    curve: ImplicitCurve
    raw: Polynomial
    notes: Tuple[str, ...] = ()

    @property
    def pruning_complete(self) -> bool:
        return not any(n.startswith("PruningIncomplete") for n in self.notes)


def _normalize_eliminant(raw: Polynomial, main_var: str, points: Sequence[Tuple[Fraction, Fraction]]):
    notes: List[str] = []
    base = primitive_part(raw)
    mono = monomial_content(base)
    reduced = base
    if mono:
        reduced = primitive_part(strip_monomial_factor(base))
        notes.append(f"removed monomial factor {format_monomial(mono)}")
    if reduced.is_constant:
        notes.append("PruningIncomplete: eliminant is a monomial; kept it")
        return ImplicitCurve(base), notes
    pruned = square_free(reduced, main_var)
    if pruned != reduced:
        notes.append("collapsed repeated factors")
    bad = [pt for pt in points if pruned.evaluate({"x": pt[0], "y": pt[1]}) != 0]
    if bad:
        notes.append(
            f"PruningIncomplete: {len(bad)} contact point(s) are off the pruned curve; "
            "reporting the content-free eliminant"
        )
        return ImplicitCurve(base), notes
    return ImplicitCurve(pruned), notes


def contact_point(fam: LineFamily, t0) -> Tuple[Fraction, Fraction]:
    """Solve ``F = 0, dF/dt = 0`` at ``t = t0``."""
    t0 = as_rational(t0, "parameter")
    at = {fam.parameter: t0}
    coeffs = fam.coefficients()
    a, b, c = (p.evaluate(at) for p in coeffs)
    da, db, dc = (p.derivative(fam.parameter).evaluate(at) for p in coeffs)
    det = a * db - b * da
    if det == 0:
        raise NoUniqueContact(f"no unique contact point at {fam.parameter}={t0}", t0)
    x = (-c * db + b * dc) / det
    y = (-a * dc + c * da) / det
    return x, y


def sample_envelope_points(fam: LineFamily, params: Sequence) -> List[Tuple[Fraction, Fraction]]:
    """Exact contact points of the envelope with the members at ``params``."""
    return [contact_point(fam, t) for t in params]


def _safe_contacts(fam: LineFamily, params) -> List[Tuple[Fraction, Fraction]]:
    out = []
    for t in params:
        try:
            out.append(contact_point(fam, t))
        except NoUniqueContact:
            continue
    return out


def envelope_unconstrained(fam: LineFamily, main_var: str = "x", check_params: Optional[Sequence] = None) -> EnvelopeResult:
    """Envelope of a one-parameter line family.

    >>> from stringart.family import diagonal_family
    >>> str(envelope_unconstrained(diagonal_family(10)).curve)
    'x^2+20*y+100'
    """
    t = fam.parameter
    F = fam.poly
    if F.degree(t) < 2:
        raise LinearInParameter(f"{fam.label or 'family'} is linear in {t}: a pencil has no envelope")
    raw = resultant(F, F.derivative(t), t)
    if raw.is_zero:
        raise StringArtError("F and dF/dt share a factor; the family has a repeated component")
    if raw.is_constant:
        raise StringArtError("the discriminant set is empty")
    params = _CHECK_PARAMS if check_params is None else check_params
    curve, notes = _normalize_eliminant(raw, main_var, _safe_contacts(fam, params))
    return EnvelopeResult(curve, raw, tuple(notes))


def jacobian_condition(fam: ConstrainedFamily) -> Polynomial:
    p, q = fam.parameters
    F, G = fam.poly, fam.constraint
    return F.derivative(p) * G.derivative(q) - F.derivative(q) * G.derivative(p)


def constrained_contact_point(fam: ConstrainedFamily, p0, q0) -> Tuple[Fraction, Fraction]:
    """Solve ``F = J = 0`` for ``(x, y)`` at a point ``(p0, q0)`` of the constraint."""
    p, q = fam.parameters
    at = {p: as_rational(p0), q: as_rational(q0)}
    if fam.constraint.evaluate(at) != 0:
        raise ValueError(f"({p0}, {q0}) does not satisfy the constraint")
    rows = []
    for eq in (fam.poly, jacobian_condition(fam)):
        e = eq.subs(at)
        rows.append((e.coeff("x", 1).constant_term, e.coeff("y", 1).constant_term, e.subs({"x": 0, "y": 0}).constant_term))
    (a, b, c), (a2, b2, c2) = rows
    det = a * b2 - b * a2
    if det == 0:
        raise NoUniqueContact(f"no unique contact point at ({p0}, {q0})", (p0, q0))
    return (-c * b2 + b * c2) / det, (-a * c2 + c * a2) / det


def sample_constrained_points(fam: ConstrainedFamily, pairs: Sequence) -> List[Tuple[Fraction, Fraction]]:
    return [constrained_contact_point(fam, p0, q0) for p0, q0 in pairs]


def envelope_constrained(
    fam: ConstrainedFamily, main_var: str = "x", check_pairs: Optional[Sequence] = None
) -> EnvelopeResult:
    """Envelope of ``F = 0`` subject to ``G = 0`` with the Jacobian tangency condition.

    ``q`` is eliminated first.  Both eliminations use the same pivot (``F``
    when its degree in ``q`` does not exceed that of ``G``, otherwise ``G``),
    so that the two partial eliminants refer to the same root ``q``.
    """
    p, q = fam.parameters
    F, G = fam.poly, fam.constraint
    if G.degree(p) < 1 or G.degree(q) < 1:
        raise ConstraintDegenerate("the constraint must involve both parameters")
    J = jacobian_condition(fam)
    if J.is_zero:
        raise ConstraintDegenerate("Jacobian condition vanishes identically")
    notes = []
    try:
        if 1 <= F.degree(q) <= G.degree(q):
            r1 = resultant(F, G, q)
            r2 = resultant(F, J, q)
            notes.append(f"eliminated {q} with F as pivot")
        else:
            r1 = resultant(F, G, q)
            r2 = resultant(J, G, q)
            notes.append(f"eliminated {q} with G as pivot")
        raw = resultant(r1, r2, p)
    except BothConstantInV as exc:
        raise ConstraintDegenerate(str(exc)) from None
    if raw.is_zero or raw.is_constant:
        raise ConstraintDegenerate("elimination produced no curve")
    points = []
    for pair in check_pairs or ():
        try:
            points.append(constrained_contact_point(fam, *pair))
        except NoUniqueContact:
            continue
    curve, more = _normalize_eliminant(raw, main_var, points)
    return EnvelopeResult(curve, raw, tuple(notes + more))


def tangency_defect(curve: ImplicitCurve, line: Tuple, point: Tuple) -> Optional[float]:
    """|cos| of the angle between the line direction and the curve gradient.

    Zero means the line is tangent at ``point``.  Returns None at singular
    points where the gradient vanishes.
    """
    at = {"x": point[0], "y": point[1]}
    gx = float(curve.poly.derivative("x").evaluate(at))
    gy = float(curve.poly.derivative("y").evaluate(at))
    a, b = float(line[0]), float(line[1])
    gnorm = math.hypot(gx, gy)
    dnorm = math.hypot(a, b)
    if gnorm == 0.0:
        return None
    return abs(b * gx - a * gy) / (gnorm * dnorm)
