"""Truncated power series in the distinguished variables s and t.

The truncation is part of the value: a series knows, for each distinguished
variable, the highest exponent it keeps.  Arithmetic between series with
different truncations raises instead of silently truncating, so every
obstruction order in a report can be traced back to an explicit choice.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..errors import NotAUnit, TruncationMismatch
from .poly import Poly, as_poly
from .ratfunc import RatFunc, as_ratfunc

__all__ = ["Series", "poly_substitute", "series_invert"]


class Series:
    __slots__ = ("dvars", "orders", "coeffs")

    def __init__(self, dvars, orders, coeffs=None):
        dvars = tuple(dvars)
        orders = tuple(int(o) for o in orders)
        if len(dvars) != len(orders):
            raise ValueError("one truncation order per distinguished variable")
        if len(set(dvars)) != len(dvars):
            raise ValueError("duplicate distinguished variable")
        if any(o < 0 for o in orders):
            raise ValueError("truncation orders are non-negative")
        self.dvars = dvars
        self.orders = orders
        clean = {}
        for k, c in (coeffs or {}).items():
            k = tuple(k)
            if any(x < 0 for x in k):
                raise ValueError("negative series exponent")
            if any(x > o for x, o in zip(k, orders)):
                continue
            c = as_ratfunc(c)
            if c:
                clean[k] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, dvars, orders, coeffs):
        s = object.__new__(cls)
        s.dvars = dvars
        s.orders = orders
        s.coeffs = coeffs
        return s

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c, dvars, orders):
        c = as_ratfunc(c)
        zero = (0,) * len(dvars)
        return cls(dvars, orders, {zero: c} if c else {})

    @classmethod
    def gen(cls, name, dvars, orders):
        """The distinguished variable ``name`` itself."""
        dvars = tuple(dvars)
        k = [0] * len(dvars)
        k[dvars.index(name)] = 1
        return cls(dvars, orders, {tuple(k): RatFunc.from_poly(Poly.const(1))})

    @classmethod
    def from_poly(cls, p, dvars, orders):
        """Expand a polynomial, reading the distinguished variables as series generators."""
        p = as_poly(p)
        dvars = tuple(dvars)
        present = [v for v in dvars if v in p.variables]
        coeffs = {}
        for key, c in p.collect(present).items():
            k = [0] * len(dvars)
            for v, e in zip(present, key):
                k[dvars.index(v)] = e
            coeffs[tuple(k)] = RatFunc.from_poly(c)
        return cls(dvars, orders, coeffs)

    # -- helpers -----------------------------------------------------------
    def _check(self, other):
        if self.dvars != other.dvars or self.orders != other.orders:
            raise TruncationMismatch(
                f"series truncations differ: {dict(zip(self.dvars, self.orders))} "
                f"vs {dict(zip(other.dvars, other.orders))}"
            )

    def _coerce(self, other):
        if isinstance(other, Series):
            self._check(other)
            return other
        c = as_ratfunc(other)
        if c is NotImplemented:
            return NotImplemented
        return Series.const(c, self.dvars, self.orders)

    def __getitem__(self, key):
        if isinstance(key, int):
            key = (key,)
        return self.coeffs.get(tuple(key), RatFunc.from_poly(Poly()))

    def constant_term(self):
        return self[(0,) * len(self.dvars)]

    @property
    def is_zero(self):
        return not self.coeffs

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Series._raw(self.dvars, self.orders, out)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw(self.dvars, self.orders, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        orders = self.orders
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                if any(x > o for x, o in zip(k, orders)):
                    continue
                if k in out:
                    out[k] = out[k] + c1 * c2
                else:
                    out[k] = c1 * c2
        return Series._raw(self.dvars, orders, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return series_invert(self) ** (-n)
        result = Series.const(1, self.dvars, self.orders)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Series):
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return (self.dvars, self.orders, self.coeffs) == (other.dvars, other.orders, other.coeffs)

    __hash__ = None

    # -- slicing -----------------------------------------------------------
    def at_zero(self, var):
        """Set a distinguished variable to 0, dropping it from the series."""
        i = self.dvars.index(var)
        dvars = self.dvars[:i] + self.dvars[i + 1 :]
        orders = self.orders[:i] + self.orders[i + 1 :]
        coeffs = {k[:i] + k[i + 1 :]: c for k, c in self.coeffs.items() if k[i] == 0}
        return Series._raw(dvars, orders, coeffs)

    def slice(self, var, k):
        """Coefficient of var^k, as a series in the other distinguished variables."""
        i = self.dvars.index(var)
        dvars = self.dvars[:i] + self.dvars[i + 1 :]
        orders = self.orders[:i] + self.orders[i + 1 :]
        coeffs = {key[:i] + key[i + 1 :]: c for key, c in self.coeffs.items() if key[i] == k}
        return Series._raw(dvars, orders, coeffs)

    def truncate(self, orders):
        """Explicitly lower the truncation (never raises it)."""
        orders = tuple(orders)
        if any(a > b for a, b in zip(orders, self.orders)):
            raise TruncationMismatch("truncate cannot raise the truncation order")
        return Series(self.dvars, orders, self.coeffs)

    def to_poly(self):
        """The stored part as a polynomial (requires polynomial coefficients)."""
        total = Poly()
        for k, c in self.coeffs.items():
            if not c.is_polynomial:
                raise ValueError("series has non-polynomial coefficients")
            mono = Poly.monomial({v: e for v, e in zip(self.dvars, k) if e})
            total = total + c.num * mono
        return total

    def degree(self, var):
        i = self.dvars.index(var)
        return max((k[i] for k in self.coeffs), default=-1)

    def map_coeffs(self, fn):
        return Series(self.dvars, self.orders, {k: fn(c) for k, c in self.coeffs.items()})

    def __str__(self):
        if not self.coeffs:
            return f"0 + O({', '.join(f'{v}^{o + 1}' for v, o in zip(self.dvars, self.orders))})"
        parts = []
        for k in sorted(self.coeffs, key=lambda k: (sum(k), k)):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.dvars, k) if e
            )
            c = str(self.coeffs[k])
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


def series_invert(u):
    """Multiplicative inverse of a series whose constant term is a nonzero RatFunc."""
    c0 = u.constant_term()
    if not c0:
        raise NotAUnit("series has zero constant term")
    inv0 = c0.inverse()
    keys = sorted(product(*(range(o + 1) for o in u.orders)), key=lambda k: (sum(k), k))
    v = {keys[0]: inv0}
    others = [(k, c) for k, c in u.coeffs.items() if any(k)]
    for key in keys[1:]:
        acc = None
        for k, c in others:
            rest = tuple(a - b for a, b in zip(key, k))
            if any(x < 0 for x in rest):
                continue
            w = v.get(rest)
            if w is None or not w:
                continue
            term = c * w
            acc = term if acc is None else acc + term
        if acc is not None and acc:
            v[key] = -(acc * inv0)
    return Series(u.dvars, u.orders, v)


def poly_substitute(p, bindings, dvars=None, orders=None):
    """Substitute series for variables of ``p`` and expand to the common truncation.

    Variables of ``p`` named like a distinguished variable and not bound are read
    as that generator; any other unbound variable stays symbolic in the
    coefficients.  All bound series must share one truncation.
    """
    p = as_poly(p)
    series = [b for b in bindings.values() if isinstance(b, Series)]
    if series:
        first = series[0]
        for b in series[1:]:
            first._check(b)
        dvars, orders = first.dvars, first.orders
    elif dvars is None or orders is None:
        raise TruncationMismatch("no series among the bindings and no truncation given")
    dvars, orders = tuple(dvars), tuple(orders)
    bound = {}
    for name, b in bindings.items():
        if name not in p.variables:
            continue
        if isinstance(b, Series):
            bound[name] = b
        else:
            bound[name] = Series.from_poly(as_poly(b), dvars, orders)
    for name in dvars:
        if name in p.variables and name not in bound:
            bound[name] = Series.gen(name, dvars, orders)
    names = [v for v in p.variables if v in bound]
    coeff_polys = p.collect(names)
    powers = {}

    def power(name, k):
        key = (name, k)
        if key not in powers:
            if k == 1:
                powers[key] = bound[name]
            else:
                half = power(name, k // 2)
                sq = half * half
                powers[key] = sq * bound[name] if k % 2 else sq
        return powers[key]

    total = Series._raw(dvars, orders, {})
    for exps, coeff in coeff_polys.items():
        term = Series.const(RatFunc.from_poly(coeff), dvars, orders)
        for name, k in zip(names, exps):
            if k:
                term = term * power(name, k)
        total = total + term
    return total

