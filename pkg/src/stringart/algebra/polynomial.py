"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by the global
variable order ``x < y < every other name alphabetically``; the empty tuple is
the constant monomial.  Exponents are always positive.

Coefficients are :class:`fractions.Fraction` values.  Polynomials are
immutable once built, so they hash and can be shared across threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from ..errors import InexactDivision

Monomial = Tuple[Tuple[str, int], ...]
Coefficient = Union[int, Fraction]

ONE_MONO: Monomial = ()


@lru_cache(maxsize=None)
def var_rank(name: str) -> tuple:
    """Sort key of a variable name in the global order."""
    if name == "x":
        return (0, "")
    if name == "y":
        return (1, "")
    return (2, name)


def sort_vars(names: Iterable[str]) -> list:
    return sorted(set(names), key=var_rank)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    if len(exps) == 1:
        return tuple(exps.items())
    return tuple(sorted(exps.items(), key=lambda it: var_rank(it[0])))


def mono_div(a: Monomial, b: Monomial):
    """Return ``a / b`` or None when ``b`` does not divide ``a``."""
    exps = dict(a)
    for v, e in b:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return tuple(sorted(exps.items(), key=lambda it: var_rank(it[0])))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    bd = dict(b)
    out = [(v, min(e, bd[v])) for v, e in a if v in bd]
    return tuple(out)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


def term_order_key(varlist):
    """Graded-lex key over an explicit variable list (highest term sorts last)."""
    index = {v: i for i, v in enumerate(varlist)}
    n = len(varlist)

    def key(m: Monomial):
        vec = [0] * n
        for v, e in m:
            vec[index[v]] = e
        return (mono_degree(m), vec)

    return key


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coefficient] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # caller guarantees no zero coefficients and canonical monomials
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Coefficient) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        return cls.const(value)

    # --- inspection -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    @property
    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; raises if it is not constant."""
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self._terms.get(ONE_MONO, Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONO, Fraction(0))

    @property
    def variables(self) -> Tuple[str, ...]:
        names = {v for m in self._terms for v, _ in m}
        return tuple(sort_vars(names))

    def involves(self, v: str) -> bool:
        return any(v == name for m in self._terms for name, _ in m)

    @property
    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(mono_degree(m) for m in self._terms)

    def degree(self, v: str) -> int:
        """Degree in ``v``; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max((dict(m).get(v, 0) for m in self._terms), default=0)

    def coeffs(self, v: str) -> Dict[int, "Polynomial"]:
        """Split into coefficients of powers of ``v`` (free of ``v``)."""
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            k = 0
            rest = []
            for name, e in m:
                if name == v:
                    k = e
                else:
                    rest.append((name, e))
            parts.setdefault(k, {})[tuple(rest)] = c
        return {k: Polynomial._raw(t) for k, t in parts.items()}

    def coeff(self, v: str, k: int) -> "Polynomial":
        return self.coeffs(v).get(k, ZERO)

    def leading_coeff(self, v: str) -> "Polynomial":
        if not self._terms:
            return ZERO
        return self.coeff(v, self.degree(v))

    def sorted_terms(self):
        """Terms in canonical (descending graded-lex) order."""
        key = term_order_key(self.variables)
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading_term(self):
        key = term_order_key(self.variables)
        m = max(self._terms, key=key)
        return m, self._terms[m]

    # --- arithmetic -----------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.const(other)
            except TypeError:
                return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> "Polynomial":
        return self

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c: Coefficient) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return ZERO
        return Polynomial._raw({m: k * c for m, k in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1 and ONE_MONO in b:
            return self.scale(b[ONE_MONO]) if a is self._terms else other.scale(b[ONE_MONO])
        out: Dict[Monomial, Fraction] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return Polynomial._raw({m: c for m, c in out.items() if c})

    def __rmul__(self, other) -> "Polynomial":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        if n == 0:
            return ONE
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            return Polynomial._raw({tuple((v, e * n) for v, e in m): c ** n})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, mono: Monomial, c: Coefficient = 1) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return ZERO
        return Polynomial._raw({mono_mul(m, mono): k * c for m, k in self._terms.items()})

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return divide_exact(self, other)
        c = _as_fraction(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / c)

    # --- calculus / substitution ---------------------------------------

    def derivative(self, v: str) -> "Polynomial":
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            for i, (name, e) in enumerate(m):
                if name == v:
                    if e == 1:
                        nm = m[:i] + m[i + 1:]
                    else:
                        nm = m[:i] + ((name, e - 1),) + m[i + 1:]
                    out[nm] = out.get(nm, 0) + c * e
                    break
        return Polynomial._raw({m: c for m, c in out.items() if c})

    def subs(self, assignment: Mapping[str, object]) -> "Polynomial":
        """Substitute polynomials (or rationals) for variables."""
        if not assignment:
            return self
        images = {v: Polynomial.coerce(p) for v, p in assignment.items()}
        powers: Dict[Tuple[str, int], Polynomial] = {}
        result: Dict[Monomial, Fraction] = {}
        acc = ZERO
        for m, c in self._terms.items():
            keep = []
            factor = None
            for v, e in m:
                img = images.get(v)
                if img is None:
                    keep.append((v, e))
                    continue
                pw = powers.get((v, e))
                if pw is None:
                    pw = img ** e
                    powers[(v, e)] = pw
                factor = pw if factor is None else factor * pw
            if factor is None:
                km = tuple(keep)
                result[km] = result.get(km, 0) + c
            else:
                acc = acc + factor.mul_monomial(tuple(keep), c)
        return acc + Polynomial({m: c for m, c in result.items() if c})

    def evaluate(self, point: Mapping[str, Coefficient]) -> Fraction:
        """Exact value at a point assigning every variable of the polynomial."""
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                try:
                    t *= _as_fraction(point[v]) ** e
                except KeyError:
                    raise KeyError(f"no value given for variable {v!r}") from None
            total += t
        return total

    def eval_float(self, point: Mapping[str, object]):
        """Floating point (or numpy-broadcast) evaluation."""
        total = 0.0
        for m, c in self._terms.items():
            t = float(c)
            for v, e in m:
                t = t * point[v] ** e
            total = total + t
        return total

    # --- comparison -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        try:
            return self._terms == Polynomial.const(other)._terms
        except TypeError:
            return NotImplemented

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        from ..parse import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({ONE_MONO: Fraction(1)})


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient ``a / b``; raises :class:`InexactDivision` unless ``b`` divides ``a``."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if b.is_constant:
        return a.scale(1 / b.constant_value)
    if a.is_zero:
        return ZERO
    key = term_order_key(sort_vars(set(a.variables) | set(b.variables)))
    lm_b = max(b._terms, key=key)
    lc_b = b._terms[lm_b]
    rem = dict(a._terms)
    quot: Dict[Monomial, Fraction] = {}
    while rem:
        lm = max(rem, key=key)
        m = mono_div(lm, lm_b)
        if m is None:
            raise InexactDivision("divisor does not divide dividend")
        c = rem[lm] / lc_b
        quot[m] = c
        for mb, cb in b._terms.items():
            t = mono_mul(mb, m)
            s = rem.get(t, 0) - c * cb
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    return Polynomial._raw(quot)


def divides(b: Polynomial, a: Polynomial) -> bool:
    try:
        divide_exact(a, b)
    except InexactDivision:
        return False
    return True


def from_univariate(coeffs: Mapping[int, Polynomial], v: str) -> Polynomial:
    """Rebuild ``sum coeffs[k] * v**k``."""
    out = ZERO
    for k, c in coeffs.items():
        out = out + (c if k == 0 else c.mul_monomial(((v, k),)))
    return out
