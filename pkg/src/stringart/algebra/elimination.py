"""Contents, gcds, square-free parts and Sylvester resultants.

Everything here is exact.  Multivariate gcds go through the recursive
primitive-part route: pick a main variable, strip contents (gcds of the
coefficients, computed recursively in the remaining variables) and run a
subresultant pseudo-remainder sequence on the primitive parts.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, isqrt
from typing import List, Sequence

from ..errors import BothConstantInV, ZeroPolynomial
from .polynomial import (
    ONE,
    ZERO,
    Monomial,
    Polynomial,
    divide_exact,
    from_univariate,
    sort_vars,
)


def rational_content(p: Polynomial) -> Fraction:
    """Positive rational ``c`` such that ``p / c`` has coprime integer coefficients."""
    num = 0
    den = 1
    for _, c in p:
        num = igcd(num, c.numerator)
        den = den * c.denominator // igcd(den, c.denominator)
    if num == 0:
        return Fraction(0)
    return Fraction(num, den)


def monomial_content(p: Polynomial) -> Monomial:
    """Largest monomial dividing every term of ``p``."""
    common = None
    for m, _ in p:
        if common is None:
            common = dict(m)
        else:
            md = dict(m)
            common = {v: min(e, md[v]) for v, e in common.items() if v in md}
        if not common:
            return ()
    if not common:
        return ()
    return tuple((v, common[v]) for v in sort_vars(common))


def normalize(p: Polynomial) -> Polynomial:
    """Divide out the rational content and make the leading term positive."""
    if p.is_zero:
        return p
    c = rational_content(p)
    q = p.scale(1 / c)
    if q.sorted_terms()[0][1] < 0:
        q = -q
    return q


def primitive_part(p: Polynomial, monomials: bool = False) -> Polynomial:
    """Content-free, sign-normalized part of ``p``.

    With ``monomials=True`` the largest monomial dividing every term is
    removed as well.

    >>> from stringart.parse import parse_poly
    >>> str(primitive_part(parse_poly("-2*x^2 - 4*x")))
    'x^2+2*x'
    >>> str(primitive_part(parse_poly("-2*x^2 - 4*x"), monomials=True))
    'x+2'
    """
    if p.is_zero:
        raise ZeroPolynomial("primitive part of the zero polynomial")
    if monomials:
        p = strip_monomial_factor(p)
    return normalize(p)


def strip_monomial_factor(p: Polynomial) -> Polynomial:
    mono = monomial_content(p)
    if not mono:
        return p
    return Polynomial({_strip(m, mono): c for m, c in p})


def _strip(m: Monomial, mono: Monomial) -> Monomial:
    d = dict(m)
    for v, e in mono:
        d[v] -= e
    return tuple((v, d[v]) for v, _ in m if d[v])


def pseudo_remainder(a: Polynomial, b: Polynomial, v: str) -> Polynomial:
    """``lc(b)**(deg a - deg b + 1) * a`` reduced modulo ``b`` in ``v``."""
    n = b.degree(v)
    if n < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    m = a.degree(v)
    if m < n:
        return a
    lc = b.leading_coeff(v)
    r = a
    e = m - n + 1
    while not r.is_zero and r.degree(v) >= n:
        k = r.degree(v) - n
        t = r.leading_coeff(v)
        if k:
            t = t.mul_monomial(((v, k),))
        r = lc * r - t * b
        e -= 1
    return r * lc ** e if e else r


def content_in(p: Polynomial, v: str) -> Polynomial:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``v``."""
    g = ZERO
    for c in p.coeffs(v).values():
        g = gcd(g, c)
        if g == ONE:
            break
    return g


def primitive_in(p: Polynomial, v: str) -> Polynomial:
    if p.is_zero:
        return p
    return normalize(divide_exact(p, content_in(p, v)))


def gcd(p: Polynomial, q: Polynomial, v: str | None = None) -> Polynomial:
    """Normalized greatest common divisor of two polynomials."""
    if p.is_zero:
        return normalize(q)
    if q.is_zero:
        return normalize(p)
    names = sort_vars(set(p.variables) | set(q.variables))
    if not names:
        return ONE
    if v is None or v not in names:
        v = names[0]
    if not p.involves(v):
        return gcd(p, content_in(q, v))
    if not q.involves(v):
        return gcd(content_in(p, v), q)
    cp = content_in(p, v)
    cq = content_in(q, v)
    c = gcd(cp, cq)
    a = divide_exact(p, cp)
    b = divide_exact(q, cq)
    if a.degree(v) < b.degree(v):
        a, b = b, a
    g = h = ONE
    while True:
        delta = a.degree(v) - b.degree(v)
        r = pseudo_remainder(a, b, v)
        if r.is_zero:
            break
        if r.degree(v) == 0:
            b = ONE
            break
        a = b
        b = divide_exact(r, g * h ** delta)
        g = a.leading_coeff(v)
        if delta:
            h = divide_exact(g ** delta, h ** (delta - 1))
    return normalize(c * primitive_in(b, v))


def gcd_univariate(p: Polynomial, q: Polynomial, v: str) -> Polynomial:
    """gcd of ``p`` and ``q`` with ``v`` as the main variable.

    The coefficients may be polynomials in the other variables.
    """
    return gcd(p, q, v)


def square_free(p: Polynomial, v: str = "x") -> Polynomial:
    """Collapse repeated factors, ``p / gcd(p, dp/dv)``, applied to content too."""
    if p.is_zero:
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if p.is_constant:
        return ONE
    if not p.involves(v):
        return square_free(p, p.variables[0])
    cont = content_in(p, v)
    prim = divide_exact(p, cont)
    g = gcd(prim, prim.derivative(v), v)
    out = divide_exact(prim, g)
    if not cont.is_constant:
        out = out * square_free(cont, cont.variables[0])
    return normalize(out)


def sylvester_matrix(p: Polynomial, q: Polynomial, v: str) -> List[List[Polynomial]]:
    m = p.degree(v)
    n = q.degree(v)
    if m < 1 and n < 1:
        raise BothConstantInV(f"neither polynomial involves {v!r}")
    pc = p.coeffs(v)
    qc = q.coeffs(v)
    prow = [pc.get(k, ZERO) for k in range(m, -1, -1)]
    qrow = [qc.get(k, ZERO) for k in range(n, -1, -1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([ZERO] * i + prow + [ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ZERO] * i + qrow + [ZERO] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free Gaussian elimination determinant."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        candidates = [i for i in range(k, n) if not a[i][k].is_zero]
        if not candidates:
            return ZERO
        piv = min(candidates, key=lambda i: (len(a[i][k]), i))
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row = a[i]
            krow = a[k]
            for j in range(k + 1, n):
                t = row[j] * akk
                if not aik.is_zero:
                    t = t - aik * krow[j]
                row[j] = divide_exact(t, prev) if prev is not ONE else t
            row[k] = ZERO
        prev = akk
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(p: Polynomial, q: Polynomial, v: str) -> Polynomial:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``v``.

    Sign convention: the first ``deg_v q`` rows carry the coefficients of
    ``p`` (highest power first), the remaining ``deg_v p`` rows those of
    ``q``.  With this layout ``Res_t(t**2 - x, 2*t) == -4*x``.
    """
    if p.is_zero or q.is_zero:
        if p.degree(v) < 1 and q.degree(v) < 1:
            raise BothConstantInV(f"neither polynomial involves {v!r}")
        return ZERO
    return bareiss_det(sylvester_matrix(p, q, v))


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Polynomial, v: str, max_coefficient: int = 10 ** 12) -> List[Fraction]:
    """Distinct rational roots of a univariate polynomial, ascending.

    Uses the rational root theorem on the integer-normalized polynomial.
    Candidates are enumerated only when the extreme coefficients are at most
    ``max_coefficient``; otherwise only the root 0 is detected.
    """
    if p.is_zero:
        raise ZeroPolynomial("every value is a root of the zero polynomial")
    extra = set(p.variables) - {v}
    if extra:
        raise ValueError(f"polynomial is not univariate in {v!r}: also has {sorted(extra)}")
    coeffs = p.coeffs(v)
    low = min(coeffs)
    roots = set()
    if low > 0:
        roots.add(Fraction(0))
        coeffs = {k - low: c for k, c in coeffs.items()}
    q = normalize(from_univariate(coeffs, v))
    if q.degree(v) < 1:
        return sorted(roots)
    qc = q.coeffs(v)
    a0 = int(qc[0].constant_value)
    an = int(qc[max(qc)].constant_value)
    if abs(a0) > max_coefficient or abs(an) > max_coefficient:
        return sorted(roots)
    for num in _divisors(a0):
        for den in _divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and q.evaluate({v: cand}) == 0:
                    roots.add(cand)
    return sorted(roots)
