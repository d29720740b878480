"""Recursive-descent parser for univariate polynomial expressions over Q.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | VAR | '(' expr ')'

Division is only allowed by a nonzero constant.  Floating-point literals are
rejected so that every coefficient stays exact.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exact import UniPoly

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+[eE][+-]?\d+)|(\d+)|([A-Za-z_]\w*)|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            raise ParseError(f"floating-point literal {m.group(1)!r} not allowed", start, text)
        if m.group(2):
            out.append(("INT", int(m.group(2)), start))
        elif m.group(3):
            out.append(("NAME", m.group(3), start))
        elif m.group(4).strip():
            out.append(("OP", m.group(4), start))
        pos = m.end()
    out.append(("END", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, var: str):
        self.text = text
        self.var = var
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, op):
        tok = self.take()
        if tok[0] != "OP" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def expr(self) -> UniPoly:
        acc = self.term()
        while self.peek()[0] == "OP" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> UniPoly:
        acc = self.unary()
        while self.peek()[0] == "OP" and self.peek()[1] in "*/":
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if rhs.degree() > 0:
                    self.error("division by a non-constant polynomial", op)
                if rhs.is_zero():
                    self.error("division by zero", op)
                acc = acc * UniPoly.const(1 / Fraction(rhs[0]), self.var)
        return acc

    def unary(self) -> UniPoly:
        tok = self.peek()
        if tok[0] == "OP" and tok[1] in "+-":
            self.take()
            val = self.unary()
            return -val if tok[1] == "-" else val
        return self.power()

    def power(self) -> UniPoly:
        base = self.atom()
        if self.peek()[0] == "OP" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "INT":
                self.error("exponent must be a nonnegative integer", tok)
            return base ** tok[1]
        return base

    def atom(self) -> UniPoly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "INT":
            return UniPoly.const(val, self.var)
        if kind == "NAME":
            if val != self.var:
                self.error(f"unknown variable {val!r} (expected {self.var!r})", tok)
            return UniPoly.gen(self.var)
        if kind == "OP" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "END":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected token {val!r}", tok)


def parse_poly(text: str, var: str = "t") -> UniPoly:
    if not text.strip():
        raise ParseError("empty expression", 0, text)
    p = _Parser(text, var)
    out = p.expr()
    if p.peek()[0] != "END":
        p.error(f"unexpected token {p.peek()[1]!r}")
    return out


def parse_rational(text: str) -> Fraction:
    """An integer or ``p/q``, optionally signed; no decimals."""
    poly = parse_poly(str(text), "t")
    if poly.degree() > 0:
        raise ParseError("expected a rational constant", 0, str(text))
    return Fraction(poly[0])


__all__ = ["parse_poly", "parse_rational", "ParseError"]
