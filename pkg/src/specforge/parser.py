"""Recursive-descent parser for polynomials in T and Y with integer coefficients.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "T" | "Y" | "(" expr ")"

Implicit multiplication ("2Y", "T(Y+1)") is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import BiPoly
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([TY])|([-+*^()])|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # trailing whitespace
        num, var, op, other = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(Token("int", num, start))
        elif var is not None:
            tokens.append(Token("var", var, start))
        elif op is not None:
            tokens.append(Token(op, op, start))
        elif other in "/.":
            raise ParseError("non-integer coefficient", start)
        else:
            raise ParseError(f"unexpected character {other!r}", start)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        stripped = text.rstrip()
        self.eof = max(len(stripped) - 1, 0)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.eof)
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", tok.pos)
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            self._trailing(tok)
        return value

    def _trailing(self, tok):
        if tok.kind in ("int", "var", "("):
            raise ParseError("implicit multiplication is not allowed", tok.pos)
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)

    def expr(self):
        value = self.term()
        while self.peek() is not None and self.peek().kind in "+-":
            op = self.take().kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() is not None and self.peek().kind == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        tok = self.peek()
        if tok is not None and tok.kind in "+-":
            self.take()
            value = self.unary()
            return -value if tok.kind == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok.kind == "^":
            self.take()
            exp = self.expect("int")
            return base ** int(exp.text)
        return base

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return BiPoly.const(int(tok.text))
        if tok.kind == "var":
            return BiPoly.T() if tok.text == "T" else BiPoly.Y()
        if tok.kind == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)


def parse_poly(text):
    """Parse an expression in T and Y into an exact BiPoly."""
    return _Parser(text).parse()
