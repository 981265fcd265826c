"""Recursive-descent parser for the polynomial text grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' nat]
    atom   := nat | 't' | 'x'nat | 'y'nat'_'nat | '(' expr ')'
            | 'comm' '(' expr ',' expr ')' | '@'name

``t`` is the generator of an extension field, so ``(t+1)*x1*x2`` and
``2*t^1+1`` parse as expected. Parenthesized groups and ``comm`` may be
raised to powers; products never commute letters.
"""

from __future__ import annotations

import re

from .errors import CoefficientNotInField, ParseError, UnknownVariable
from .fixtures import named_polynomial
from .freealg import NcPolynomial, commutator, x, y

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<comm>comm\b)
  | (?P<t>t\b)
  | (?P<var>[A-Za-z_]\w*)
  | (?P<ref>@\w+)
  | (?P<op>[-+*^(),])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_variable(text):
    m = re.fullmatch(r"x(\d+)|y(\d+)_(\d+)", text.strip())
    if not m:
        raise UnknownVariable(f"unknown variable {text!r}", text, 0)
    try:
        if m.group(1) is not None:
            return x(int(m.group(1)))
        return y(int(m.group(2)), int(m.group(3)))
    except ValueError as exc:
        raise UnknownVariable(str(exc), text, 0) from None


class _Parser:
    def __init__(self, text, field):
        self.text = text
        self.field = field
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a natural number", self.text, pos)
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        f = self.field
        if kind == "num":
            return NcPolynomial.constant(f, int(val))
        if kind == "t":
            if f.m == 1:
                raise CoefficientNotInField(f"'t' is not an element of F_{f.p}", self.text, pos)
            return NcPolynomial.constant(f, f.theta)
        if kind == "var":
            try:
                v = parse_variable(val)
            except UnknownVariable:
                raise UnknownVariable(f"unknown variable {val!r}", self.text, pos) from None
            return NcPolynomial.variable(f, v)
        if kind == "ref":
            try:
                return named_polynomial(val[1:], f)
            except KeyError:
                raise ParseError(f"unknown fixture {val!r}", self.text, pos) from None
        if kind == "comm":
            self.take("(")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(")")
            return commutator(a, b)
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", self.text, pos)


def parse_poly(text, field):
    """Parse polynomial text over ``field`` into canonical form."""
    p = _Parser(text, field)
    if p.peek()[0] == "end":
        raise ParseError("empty polynomial", text, 0)
    out = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", text, pos)
    return out
