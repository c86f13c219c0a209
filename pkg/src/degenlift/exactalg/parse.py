"""A small recursive-descent reader for polynomial expressions.

Grammar: sums and differences of products; factors are integers, identifiers,
parenthesised expressions, each optionally raised to a non-negative integer
power with ``^`` (``**`` is accepted too).  Division is allowed only by a
nonzero constant, so ``3/4*a`` and ``(a+b)/2`` are fine but ``1/x`` is not.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Poly

__all__ = ["parse_poly", "ExpressionError"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ExpressionError(ValueError):
    def __init__(self, message, column):
        self.column = column
        super().__init__(f"column {column}: {message}")


def _tokens(text):
    pos = 0
    out = []
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected character {text[pos]!r}", pos + 1)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(("num", int(m.group(1)), col))
        elif m.group(2):
            out.append(("id", m.group(2), col))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, col))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ExpressionError(f"expected {op!r}", t[2])

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term() * sign
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.power()
            elif t[0] == "op" and t[1] == "/":
                self.take()
                col = self.peek()[2]
                d = self.power()
                if not d.is_constant or d.is_zero:
                    raise ExpressionError("division only by a nonzero constant", col)
                acc = acc * (1 / d.constant_value())
            else:
                return acc

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise ExpressionError("exponent must be a non-negative integer", e[2])
            return base ** e[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return Poly.const(Fraction(t[1]))
        if t[0] == "id":
            return Poly.var(t[1])
        if t[0] == "op" and t[1] == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if t[0] == "op" and t[1] == "-":
            return -self.power()
        raise ExpressionError("expected a number, a name or '('", t[2])


def parse_poly(text):
    """Parse ``text`` into a :class:`Poly`; raises ExpressionError with a column."""
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ExpressionError("empty expression", 1)
    result = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise ExpressionError(f"unexpected {t[1]!r}", t[2])
    return result
