"""Recursive-descent parser for polynomial text.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := primary ('^' unary)?
    primary := INTEGER | NAME | '(' expr ')'

Division is only allowed by nonzero constants (so ``3/4*x`` is fine) and
exponents must evaluate to nonnegative integer constants.  Juxtaposition
such as ``2x`` or ``x y`` is rejected.  Names that are not ring variables
may be bound to integers through ``params`` (used for families ``x^p``).
"""
from __future__ import annotations

import re

from ..errors import ParseError
from .polynomial import Polynomial
from .ring import RingSpec

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, ring, params):
        self.text = text
        self.ring = ring
        self.params = params or {}
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "name") or tok[1] == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected token {tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in ("*", "/"):
                self.take()
                rhs = self.unary()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        self.error("division only by nonzero constants", tok)
                    value = value / rhs.constant_value()
            elif tok[0] in ("int", "name") or tok[1] == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            else:
                return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.primary()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            etok = self.peek()
            exp = self.unary()
            if not exp.is_constant():
                self.error("exponent must be a constant", etok)
            e = exp.constant_value()
            if e.denominator != 1 or e < 0:
                self.error("exponent must be a nonnegative integer", etok)
            return base ** int(e)
        return base

    def primary(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return Polynomial.constant(self.ring, int(val))
        if kind == "name":
            if val in self.ring:
                return Polynomial.var(self.ring, val)
            if val in self.params:
                return Polynomial.constant(self.ring, self.params[val])
            raise ParseError(f"unknown variable {val!r}", pos, self.text)
        if kind == "op" and val == "(":
            value = self.expr()
            close = self.take()
            if close[1] != ")":
                raise ParseError("expected ')'", close[2], self.text)
            return value
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {val!r}", pos, self.text)


def parse_polynomial(text: str, ring: RingSpec, params=None) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``; raises ParseError."""
    return _Parser(text, ring, params).parse()


def parse_polynomials(text: str, ring: RingSpec, params=None) -> list[Polynomial]:
    """Parse a comma separated list of polynomials."""
    out = []
    offset = 0
    for chunk in text.split(","):
        if chunk.strip():
            try:
                out.append(parse_polynomial(chunk, ring, params))
            except ParseError as exc:
                pos = None if exc.position is None else exc.position + offset
                raise ParseError(str(exc).split(" (at position")[0], pos, text) from None
        offset += len(chunk) + 1
    return out
