"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'
"""

from __future__ import annotations

import re

from .errors import ParseError
from .polycore import Polynomial, Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text, line, col0):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", line, col0 + start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring, line, col0):
        self.ring = ring
        self.line = line
        self.col0 = col0
        self.toks = _tokenize(text, line, col0)
        self.i = 0

    def error(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        raise ParseError(msg, self.line, self.col0 + tok[2])

    def peek(self):
        return self.toks[self.i][0]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self):
        if self.peek() == "eof":
            self.error("empty expression")
        value = self.expr()
        if self.peek() != "eof":
            self.error(f"unexpected token {self.toks[self.i][1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in "+-" and self.peek() != "eof":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.toks[self.i]
            if tok[0] != "int":
                self.error("exponent must be a nonnegative integer literal", tok)
            self.take()
            base = base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, text, _ = tok
        if kind == "int":
            return self.ring.const(int(text))
        if kind == "name":
            if text not in self.ring.names:
                self.error(f"unknown variable {text!r}", tok)
            return self.ring.var(text)
        if kind == "(":
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.take()
            return value
        self.error(f"unexpected token {text!r}" if text else "unexpected end of expression", tok)


def parse_polynomial(text: str, ring: Ring, line: int = 1, column: int = 1) -> Polynomial:
    """Parse ``text`` into ``ring``; ``line``/``column`` offset error locations."""
    return _Parser(text, ring, line, column).parse()
