import random
from fractions import Fraction

import pytest

from stringart.algebra import ZERO, Polynomial, primitive_part
from stringart.errors import DegenerateLine, PoleCoincidence
from stringart.family import cross_family, diagonal_family
from stringart.parse import parse_poly as P
from stringart.proofs import (
    ProofMethod,
    RationalFunction,
    TangentLine,
    prove_calculus_identity,
    prove_discriminant,
    prove_generic_tangency,
    prove_reflection_property,
    reflect_point,
    string_slope_intercept,
    tangent_line_at,
)

from conftest import random_rational

F = Fraction
CROSS = P("x^2+2*x*y+y^2-20*x+20*y+100")
DIAG = P("x^2+20*y+100")


def random_ds(n=20, seed=3):
    rng = random.Random(seed)
    return [F(rng.randint(1, 10_000), rng.randint(1, 100)) for _ in range(n)]


def test_string_slope_intercept():
    line = string_slope_intercept(10)
    assert line.slope == P("1-1/5*e")
    assert line.intercept == P("1/5*e^2-2*e")
    at0 = {"e": F(0)}
    assert (line.slope.evaluate(at0), line.intercept.evaluate(at0)) == (1, 0)
    for d in (F(10), F(7, 3)):
        line = string_slope_intercept(d)
        e = Polynomial.var("e")
        for px, py in ((e, -e), (e - d, e - d)):
            assert (line.slope * px + line.intercept - py).is_zero


def test_discriminant_examples():
    for d in (10, 7):
        rep = prove_discriminant(d)
        assert rep.success and rep.witness == ZERO and rep.counterexample is None
        assert rep.method is ProofMethod.DISCRIMINANT


def test_discriminant_mutation():
    line = string_slope_intercept(10)
    rep = prove_discriminant(10, TangentLine(line.slope, line.intercept + 1, "e"))
    assert not rep.success
    assert rep.witness == Polynomial.const(F(-1, 5))
    assert rep.counterexample == 0


def test_discriminant_d_mismatch_fails():
    rep = prove_discriminant(11, string_slope_intercept(10))
    assert not rep.success and rep.counterexample is not None


def test_tangent_line():
    tl = tangent_line_at(10)
    assert tl.slope == P("-1/10*t")
    assert tl.intercept == P("1/20*t^2-5")
    assert tl.slope.evaluate({"t": 0}) == 0 and tl.intercept.evaluate({"t": 0}) == -5
    # double root at x = t
    x, t = Polynomial.var("x"), Polynomial.var("t")
    gap = tl.slope * x + tl.intercept - (x * x * F(-1, 20) - 5)
    assert gap == (x - t) ** 2 * F(1, 20)


def test_calculus_examples():
    for d in (10, 4):
        rep = prove_calculus_identity(d)
        assert rep.success and rep.witness.is_zero
        assert rep.excluded == (-d, d)


def test_calculus_mutations():
    tl = tangent_line_at(10)
    wrong = RationalFunction(tl.intercept, tl.slope * -1 - 1)
    rep = prove_calculus_identity(10, x_cpp=wrong)
    assert not rep.success and rep.counterexample is not None
    bumped = TangentLine(tl.slope, tl.intercept + 1, "t")
    assert not prove_calculus_identity(10, tangent=bumped).success
    assert not prove_calculus_identity(11, tangent=tl).success


def test_calculus_pole_coincidence():
    tl = TangentLine(Polynomial.const(-1), Polynomial.var("t"), "t")
    with pytest.raises(PoleCoincidence):
        prove_calculus_identity(10, tangent=tl)


@pytest.mark.parametrize("d", random_ds())
def test_d_generality(d):
    assert prove_discriminant(d).success
    assert prove_calculus_identity(d).success


def test_generic_tangency_examples():
    rep = prove_generic_tangency(DIAG, diagonal_family(10))
    assert rep.success and rep.excluded == ()
    rep = prove_generic_tangency(CROSS, cross_family(10))
    assert rep.success and rep.excluded == (0,)
    circ = prove_generic_tangency(P("x^2+y^2-25"), diagonal_family(10))
    assert not circ.success and not circ.witness.is_zero and circ.counterexample is not None


def test_generic_tangency_mutation():
    assert not prove_generic_tangency(DIAG + 1, diagonal_family(10)).success
    assert not prove_generic_tangency(CROSS + 1, cross_family(10)).success
    assert not prove_generic_tangency(DIAG, diagonal_family(11)).success


def test_discriminant_and_tangency_agree_on_diagonal():
    assert prove_discriminant(10).success
    assert prove_generic_tangency(DIAG, diagonal_family(10)).success
    # the circle about the origin through the vertex (0, -5), handled by the same quadratic-discriminant route
    circle = P("x^2+y^2-25")
    line = string_slope_intercept(10)
    x = Polynomial.var("x")
    quad = circle.subs({"y": line.slope * x + line.intercept})
    qa, qb, qc = (quad.coeff("x", k) for k in (2, 1, 0))
    disc = qb * qb - 4 * qa * qc
    tang = prove_generic_tangency(circle, diagonal_family(10))
    assert not disc.is_zero and not tang.success
    assert primitive_part(disc) == primitive_part(tang.witness)


def test_reflect_examples():
    assert reflect_point((0, -10), (1, -1, 0)) == (-10, 0)
    assert reflect_point((0, -10), (1, 1, 0)) == (10, 0)
    with pytest.raises(DegenerateLine):
        reflect_point((0, 0), (0, 0, 3))


def test_reflect_involution(rng):
    for _ in range(500):
        line = (random_rational(rng), random_rational(rng), random_rational(rng))
        if line[0] == 0 and line[1] == 0:
            continue
        pt = (random_rational(rng), random_rational(rng))
        assert reflect_point(reflect_point(pt, line), line) == pt


def test_reflection_examples():
    assert prove_reflection_property(diagonal_family(10), (0, -10), (0, 1, 0)).success
    assert prove_reflection_property(cross_family(10), (5, -5), (1, -1, 0)).success
    bad = prove_reflection_property(diagonal_family(10), (0, -9), (0, 1, 0))
    assert not bad.success and not bad.witness.is_zero


def test_reflection_mutations():
    for focus, directrix in [((1, -10), (0, 1, 0)), ((0, -10), (0, 1, 1)), ((0, -10), (1, 1, 0))]:
        assert not prove_reflection_property(diagonal_family(10), focus, directrix).success
    assert not prove_reflection_property(cross_family(10), (6, -5), (1, -1, 0)).success


def test_reflection_scale_invariance(rng):
    for _ in range(10):
        k = random_rational(rng) or F(1)
        m = random_rational(rng) or F(2)
        fam = diagonal_family(10).scaled(m)
        assert prove_reflection_property(fam, (0, -10), (0, k, 0)).success
        fam = cross_family(10).scaled(m)
        assert prove_reflection_property(fam, (5, -5), (k, -k, 0)).success


def test_rational_function():
    t = Polynomial.var("t")
    a = RationalFunction(t * t - 1, t - 1)
    assert a == RationalFunction(t + 1)
    assert (a - (t + 1)).is_zero
    r = a.reduced()
    assert r.den.is_constant
    with pytest.raises(ZeroDivisionError):
        RationalFunction(t, ZERO)


def test_report_dict():
    d = prove_calculus_identity(10).to_dict()
    assert d["method"] == "calculus" and d["success"] is True
    assert d["witness"] == "0" and d["excluded"] == ["-10", "10"]
    assert all(isinstance(s, str) for s in d["steps"])
