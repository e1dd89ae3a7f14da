"""Text <-> polynomial conversion.

Grammar (whitespace is insignificant)::

    expression := ['-'] term (('+' | '-') term)*
    term       := factor ('*' factor)*
    factor     := base ('^' nonneg-integer)?
    base       := integer | integer '/' positive-integer | variable
                | '(' expression ')'

Variables match ``[a-z][a-z0-9_]*``.  Juxtaposition (``2x``) is rejected so
multi-letter names stay unambiguous.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .algebra import Polynomial, normalize
from .errors import StringArtError

MAX_EXPONENT = 2 ** 31 - 1


class ParseErrorKind(enum.Enum):
    UnexpectedToken = "UnexpectedToken"
    NonNegativeExponentRequired = "NonNegativeExponentRequired"
    UnbalancedParenthesis = "UnbalancedParenthesis"
    EmptyInput = "EmptyInput"
    InvalidNumber = "InvalidNumber"


class ParseError(StringArtError):
    def __init__(self, kind: ParseErrorKind, position: int, source: str, detail: str = ""):
        self.kind = kind
        self.position = position
        self.source = source
        msg = f"{kind.value} at offset {position}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


# token kinds
_NUM, _VAR, _OP, _END = "num", "var", "op", "end"


def _tokenize(src: str):
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch in " \t\r\n":
            i += 1
        elif "0" <= ch <= "9":
            j = i
            while j < n and "0" <= src[j] <= "9":
                j += 1
            if j < n and (src[j] == "." or "a" <= src[j] <= "z" or "A" <= src[j] <= "Z" or src[j] == "_"):
                if src[j] == ".":
                    raise ParseError(ParseErrorKind.InvalidNumber, i, src, "decimals are not exact; write p/q")
                raise ParseError(ParseErrorKind.UnexpectedToken, j, src, "implicit multiplication is not allowed")
            tokens.append((_NUM, int(src[i:j]), i))
            i = j
        elif "a" <= ch <= "z":
            j = i + 1
            while j < n and ("a" <= src[j] <= "z" or "0" <= src[j] <= "9" or src[j] == "_"):
                j += 1
            tokens.append((_VAR, src[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append((_OP, ch, i))
            i += 1
        else:
            raise ParseError(ParseErrorKind.UnexpectedToken, i, src, f"unexpected character {ch!r}")
    tokens.append((_END, None, n))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0
        self.open_parens = []

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, kind, tok, detail=""):
        raise ParseError(kind, tok[2], self.src, detail)

    def unexpected(self, tok):
        if tok[0] == _END and self.open_parens:
            self.fail(ParseErrorKind.UnbalancedParenthesis, (None, None, self.open_parens[-1]), "unclosed '('")
        if tok[0] == _OP and tok[1] == ")" and not self.open_parens:
            self.fail(ParseErrorKind.UnbalancedParenthesis, tok, "unmatched ')'")
        what = "end of input" if tok[0] == _END else repr(str(tok[1]))
        self.fail(ParseErrorKind.UnexpectedToken, tok, f"unexpected {what}")

    def parse(self) -> Polynomial:
        if self.peek()[0] == _END:
            self.fail(ParseErrorKind.EmptyInput, self.peek(), "nothing to parse")
        value = self.expression()
        tok = self.peek()
        if tok[0] != _END:
            self.unexpected(tok)
        return value

    def expression(self) -> Polynomial:
        tok = self.peek()
        negate = False
        if tok[0] == _OP and tok[1] == "-":
            self.take()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while True:
            tok = self.peek()
            if tok[0] == _OP and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self) -> Polynomial:
        value = self.factor()
        while self.peek()[0] == _OP and self.peek()[1] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        value = self.base()
        tok = self.peek()
        if tok[0] == _OP and tok[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == _OP and tok[1] == "-":
                self.fail(ParseErrorKind.NonNegativeExponentRequired, tok, "negative exponent")
            if tok[0] != _NUM:
                self.unexpected(tok)
            self.take()
            if tok[1] > MAX_EXPONENT:
                self.fail(ParseErrorKind.InvalidNumber, tok, "exponent too large")
            value = value ** tok[1]
        return value

    def base(self) -> Polynomial:
        tok = self.take()
        kind, val, _ = tok
        if kind == _NUM:
            nxt = self.peek()
            if nxt[0] == _OP and nxt[1] == "/":
                self.take()
                den = self.peek()
                if den[0] != _NUM:
                    self.unexpected(den)
                self.take()
                if den[1] == 0:
                    self.fail(ParseErrorKind.InvalidNumber, den, "zero denominator")
                return Polynomial.const(Fraction(val, den[1]))
            return Polynomial.const(val)
        if kind == _VAR:
            return Polynomial.var(val)
        if kind == _OP and val == "(":
            self.open_parens.append(tok[2])
            inner = self.expression()
            close = self.peek()
            if close[0] == _OP and close[1] == ")":
                self.take()
                self.open_parens.pop()
                return inner
            self.unexpected(close)
        self.pos -= 1
        self.unexpected(tok)


def parse_poly(text: str) -> Polynomial:
    """Parse polynomial text; raises :class:`ParseError` with an exact offset."""
    if not isinstance(text, str):
        raise TypeError("parse_poly expects a string")
    return _Parser(text).parse()


def parse_equation(text: str) -> Polynomial:
    """Parse ``lhs = rhs`` (or a bare expression) as ``lhs - rhs``."""
    if text.count("=") > 1:
        raise ParseError(ParseErrorKind.UnexpectedToken, text.rindex("="), text, "more than one '='")
    if "=" not in text:
        return parse_poly(text)
    cut = text.index("=")
    lhs = text[:cut]
    rhs = text[cut + 1:]
    try:
        left = parse_poly(lhs)
    except ParseError as exc:
        raise ParseError(exc.kind, exc.position, text, str(exc)) from None
    try:
        right = parse_poly(rhs)
    except ParseError as exc:
        raise ParseError(exc.kind, exc.position + cut + 1, text, str(exc)) from None
    return left - right


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(m) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def format_poly(p: Polynomial, normalized: bool = False) -> str:
    """Canonical text form: descending graded-lex terms, explicit ``*``.

    With ``normalized=True`` the content is divided out and the leading
    coefficient made positive first.
    """
    if normalized:
        p = normalize(p)
    if p.is_zero:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = format_rational(a)
        elif a == 1:
            body = format_monomial(m)
        else:
            body = f"{format_rational(a)}*{format_monomial(m)}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"-{body}" if neg else f"+{body}")
    return "".join(out)
