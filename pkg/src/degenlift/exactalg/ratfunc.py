"""Quotients of polynomials kept in a canonical reduced form.

Normal form: numerator and denominator share no non-constant factor; a constant
denominator is always 1; otherwise the denominator has coprime integer
coefficients and a positive grlex-leading coefficient.  Two rational functions
are equal exactly when their normal forms coincide.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from ..errors import NotAUnit, NotDivisible
from .poly import Poly, as_poly, poly_gcd

__all__ = ["RatFunc", "as_ratfunc", "ratfunc_normalize"]


class RatFunc:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1):
        num, den = as_poly(num), as_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc needs polynomial numerator and denominator")
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def from_poly(cls, p):
        return cls._raw(as_poly(p), Poly.const(1))

    # -- predicates --------------------------------------------------------
    @property
    def is_zero(self):
        return self.num.is_zero

    def __bool__(self):
        return not self.num.is_zero

    @property
    def is_polynomial(self):
        return self.den.is_constant

    @property
    def is_constant(self):
        return self.num.is_constant and self.den.is_constant

    def constant_value(self):
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def occurring(self):
        return tuple(sorted(set(self.num.occurring()) | set(self.den.occurring())))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_constant and other.den.is_constant:
            return RatFunc._raw(self.num + other.num, Poly.const(1))
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc._raw(self.num * other, self.den) if other else RatFunc._raw(Poly(), Poly.const(1))
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_constant and other.den.is_constant:
            return RatFunc._raw(self.num * other.num, Poly.const(1))
        if self.num.is_zero or other.num.is_zero:
            return RatFunc._raw(Poly(), Poly.const(1))
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero:
            raise NotAUnit("zero has no inverse")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_ratfunc(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    # -- evaluation --------------------------------------------------------
    def subs(self, bindings):
        """Substitute polynomials (or numbers) into numerator and denominator."""
        num = self.num.subs(bindings)
        den = self.den.subs(bindings)
        if den.is_zero:
            raise ZeroDivisionError(f"denominator of {self} vanishes under {bindings}")
        return RatFunc(num, den)

    def evaluate(self, values):
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError(f"denominator of {self} vanishes at {values}")
        return self.num.evaluate(values) / d

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- display -----------------------------------------------------------
    def display_parts(self):
        """(numerator, denominator) scaled to integer coefficients for printing."""
        m = lcm(*(c.denominator for c in self.num.terms.values())) if self.num.terms else 1
        return self.num * m, self.den * m

    def __str__(self):
        num, den = self.display_parts()
        if den == 1:
            return str(num)
        ns = str(num)
        if len(num.terms) > 1:
            ns = f"({ns})"
        ds = str(den)
        if any(ch in ds for ch in "*+- "):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _normalize(num, den):
    if num.is_zero:
        return Poly(), Poly.const(1)
    if den.is_constant:
        return num * (1 / den.constant_value()), Poly.const(1)
    g = poly_gcd(num, den)
    if not g.is_constant:
        num = num.divide(g)
        den = den.divide(g)
    if den.is_constant:
        return num * (1 / den.constant_value()), Poly.const(1)
    scale = den.content()
    if den.leading_coeff() < 0:
        scale = -scale
    return num * (1 / scale), den * (1 / scale)


def as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    p = as_poly(x)
    if p is NotImplemented:
        return NotImplemented
    return RatFunc._raw(p, Poly.const(1))


def ratfunc_normalize(r):
    """Canonical representative of ``r`` (a RatFunc or a (num, den) pair)."""
    if isinstance(r, tuple):
        return RatFunc(*r)
    if isinstance(r, RatFunc):
        return RatFunc(r.num, r.den)
    return as_ratfunc(r)


def exact_quotient(p, q):
    try:
        return as_poly(p).divide(q)
    except NotDivisible:
        return None
