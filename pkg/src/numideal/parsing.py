"""Polynomial text grammar: parser and canonical printer.

Grammar: variables from {x, y, z, x1..x9}; integer and rational literals
a/b; imaginary unit token i; operators + - * ^ with integer exponents;
parentheses; whitespace insignificant.  The canonical printer emits the same
grammar in graded-lexicographic term order with z last, so parse(format(p))
is the identity.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .gaussian import GaussianRational
from .poly import MultiPoly

# z is always last; x-variables keep this fixed priority.  z1..z9 are
# accepted for polydisk-side inputs (the `transform` command).
VAR_PRIORITY = (
    ("x", "y")
    + tuple(f"x{k}" for k in range(1, 10))
    + tuple(f"z{k}" for k in range(1, 10))
    + ("z",)
)

_KNOWN_VARS = set(VAR_PRIORITY)


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            num = int(text[start:pos])
            # rational literal a/b is one token
            if pos < n and text[pos] == "/":
                after = pos + 1
                if after < n and text[after].isdigit():
                    pos = after
                    dstart = pos
                    while pos < n and text[pos].isdigit():
                        pos += 1
                    den = int(text[dstart:pos])
                    if den == 0:
                        raise ParseError("zero denominator", start)
                    tokens.append(("num", Fraction(num, den), start))
                    continue
                raise ParseError("expected digits after '/'", after)
            tokens.append(("num", Fraction(num), start))
            continue
        if ch.isalpha():
            start = pos
            pos += 1
            while pos < n and text[pos].isdigit():
                pos += 1
            name = text[start:pos]
            if name == "i":
                tokens.append(("i", name, start))
            elif name in _KNOWN_VARS:
                tokens.append(("var", name, start))
            else:
                raise ParseError(f"unknown variable {name!r}", start)
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens, vars):
        self.tokens = tokens
        self.k = 0
        self.vars = vars

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind=None):
        tok = self.tokens[self.k]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.k += 1
        return tok

    def parse_expr(self) -> MultiPoly:
        sign = 1
        if self.peek()[0] in "+-":
            if self.take()[0] == "-":
                sign = -1
        total = self.parse_term().scale(sign)
        while self.peek()[0] in "+-":
            op = self.take()[0]
            term = self.parse_term()
            total = total + (term if op == "+" else -term)
        return total

    def parse_term(self) -> MultiPoly:
        total = self.parse_factor()
        while self.peek()[0] == "*":
            self.take()
            total = total * self.parse_factor()
        return total

    def parse_factor(self) -> MultiPoly:
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("num")
            exp = tok[1]
            if exp.denominator != 1 or exp < 0:
                raise ParseError("exponent must be a non-negative integer", tok[2])
            return base ** int(exp)
        return base

    def parse_atom(self) -> MultiPoly:
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return MultiPoly.constant(self.vars, GaussianRational(value))
        if kind == "i":
            self.take()
            return MultiPoly.constant(self.vars, GaussianRational(0, 1))
        if kind == "var":
            self.take()
            return MultiPoly.variable(self.vars, value)
        if kind == "(":
            self.take()
            inner = self.parse_expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return -self.parse_atom()
        raise ParseError(f"unexpected token {value!r}", pos)


def parse(text: str, vars=None) -> MultiPoly:
    """Parse a polynomial expression into canonical MultiPoly form.

    When `vars` is omitted, the variable tuple is the set of variables that
    appear, ordered by the fixed priority x, y, x1..x9, z.
    """
    tokens = _tokenize(text)
    if vars is None:
        seen = {t[1] for t in tokens if t[0] == "var"}
        vars = tuple(v for v in VAR_PRIORITY if v in seen)
    parser = _Parser(tokens, tuple(vars))
    poly = parser.parse_expr()
    parser.take("end")
    return poly


# -- canonical printing ---------------------------------------------------


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_coefficient(c: GaussianRational) -> str:
    """Standalone canonical rendering of one Gaussian rational."""
    if c.is_zero():
        return "0"
    if c.is_real():
        return _frac_str(c.re)
    if c.is_imaginary():
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_frac_str(c.im)}*i"
    sign, mag = _signed_magnitude(c)
    body = _magnitude_str(mag, standalone=True)
    return f"-{body}" if sign < 0 else body


def _signed_magnitude(c: GaussianRational):
    """Extracted print sign (from re, else im) and the unsigned remainder."""
    sign = 1
    if (c.re != 0 and c.re < 0) or (c.re == 0 and c.im < 0):
        sign = -1
        c = -c
    return sign, c


def _magnitude_str(c: GaussianRational, standalone=False):
    """Render an unsigned coefficient; mixed values are parenthesized."""
    if c.is_real():
        return _frac_str(c.re)
    if c.is_imaginary():
        if c.im == 1:
            return "i"
        return f"{_frac_str(c.im)}*i"
    im = c.im
    if im > 0:
        im_body = "i" if im == 1 else f"{_frac_str(im)}*i"
        return f"({_frac_str(c.re)} + {im_body})"
    im_body = "i" if im == -1 else f"{_frac_str(-im)}*i"
    return f"({_frac_str(c.re)} - {im_body})"


def _monomial_str(vars, exps) -> str:
    parts = []
    for name, k in zip(vars, exps):
        if k == 0:
            continue
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def _term_sort_key(exps):
    # ascending total degree; descending lexicographic within a degree
    return (sum(exps), tuple(-e for e in exps))


def format_poly(p: MultiPoly) -> str:
    """Canonical text: graded-lex term order, lowercase i, '*' products."""
    if p.is_zero():
        return "0"
    pieces = []
    for exps in sorted(p.terms, key=_term_sort_key):
        coeff = p.terms[exps]
        sign, mag = _signed_magnitude(coeff)
        mono = _monomial_str(p.vars, exps)
        if not mono:
            body = _magnitude_str(mag, standalone=True)
        elif mag == GaussianRational(1):
            body = mono
        else:
            body = f"{_magnitude_str(mag)}*{mono}"
        if not pieces:
            pieces.append(body if sign > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if sign > 0 else f"- {body}")
    return " ".join(pieces)
