import random
from fractions import Fraction

import pytest

from stringart.algebra import Polynomial

VARS = ("x", "y", "t", "u")


def random_rational(rng, span=9, den=4):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_poly(rng, nvars=4, degree=5, nterms=6):
    names = VARS[:nvars]
    out = Polynomial.const(0)
    for _ in range(rng.randint(0, nterms)):
        mono = Polynomial.const(random_rational(rng))
        budget = rng.randint(0, degree)
        for _ in range(budget):
            mono = mono * Polynomial.var(rng.choice(names))
        out = out + mono
    return out


def to_sympy(p):
    import sympy

    syms = {v: sympy.Symbol(v) for v in p.variables}
    expr = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in mono:
            term *= syms[v] ** e
        expr += term
    return sympy.expand(expr)


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: (len(s.split()[1]), s.split()[1])):
            terminalreporter.write_line(line)
