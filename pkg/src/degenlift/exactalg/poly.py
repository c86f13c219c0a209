"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` stores its variables as a sorted tuple of names and its terms as
a mapping from exponent vectors (aligned with that tuple) to ``Fraction``
coefficients.  Combining polynomials over different variable sets works on the
sorted union.  The monomial order is graded-lex with variables compared in
alphabetical order; it fixes leading terms and therefore every normal form
produced downstream.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

from ..errors import NotDivisible, UnknownVariable

__all__ = ["Poly", "poly_gcd", "as_poly", "grlex_key"]


def grlex_key(exps):
    return (sum(exps), exps)


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Poly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables=(), terms=None):
        variables = tuple(variables)
        if list(variables) != sorted(set(variables)):
            order = sorted(set(variables))
            if terms:
                idx = [variables.index(v) for v in order]
                terms = {tuple(e[i] for i in idx): c for e, c in terms.items()}
            variables = tuple(order)
        self.variables = variables
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != len(variables):
                raise ValueError("exponent vector does not match the variable list")
            if any(k < 0 for k in e):
                raise ValueError("negative exponent")
            c = _frac(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c, variables=()):
        variables = tuple(sorted(set(variables)))
        c = _frac(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, name):
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def monomial(cls, powers, coeff=1):
        """``powers`` maps variable name to exponent."""
        names = tuple(sorted(powers))
        c = _frac(coeff)
        return cls._raw(names, {tuple(powers[n] for n in names): c} if c else {})

    @classmethod
    def _raw(cls, variables, terms):
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # -- alignment ---------------------------------------------------------
    def extend(self, variables):
        """Re-embed into the sorted union of our variables and ``variables``."""
        union = tuple(sorted(set(self.variables).union(variables)))
        if union == self.variables:
            return self
        pos = [union.index(v) for v in self.variables]
        n = len(union)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in zip(pos, e):
                new[i] = k
            terms[tuple(new)] = c
        return Poly._raw(union, terms)

    def _aligned(self, other):
        if self.variables == other.variables:
            return self, other
        union = set(self.variables).union(other.variables)
        return self.extend(union), other.extend(union)

    def trim(self):
        """Drop variables that occur in no term."""
        used = [i for i in range(len(self.variables)) if any(e[i] for e in self.terms)]
        if len(used) == len(self.variables):
            return self
        return Poly._raw(
            tuple(self.variables[i] for i in used),
            {tuple(e[i] for i in used): c for e, c in self.terms.items()},
        )

    # -- predicates and accessors -----------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        """Coefficient of the constant monomial."""
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def occurring(self):
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, v):
        if v not in self.variables:
            return 0 if self.terms else -1
        i = self.variables.index(v)
        return max((e[i] for e in self.terms), default=-1)

    def leading(self):
        """(exponents, coefficient) of the grlex-leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def leading_coeff(self):
        return self.leading()[1]

    def is_homogeneous(self, variables=None, degree=None):
        variables = self.variables if variables is None else variables
        idx = [i for i, v in enumerate(self.variables) if v in variables]
        degs = {sum(e[i] for i in idx) for e in self.terms}
        if degree is not None:
            degs.add(degree)
        return len(degs) <= 1

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw(self.variables, {})
            return Poly._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Poly._raw(a.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("polynomial exponent must be an integer")
        if k < 0:
            raise ValueError("negative exponent for a polynomial")
        result = Poly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        return self * _frac(c)

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            if not c:
                raise ZeroDivisionError("polynomial divided by zero")
            return self * (1 / Fraction(c))
        return NotImplemented

    # -- comparison --------------------------------------------------------
    def _canon(self):
        names = self.variables
        return frozenset(
            (tuple((names[i], k) for i, k in enumerate(e) if k), c) for e, c in self.terms.items()
        )

    def __eq__(self, other):
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._canon())
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and substitution ----------------------------------------
    def partial(self, v):
        if v not in self.variables:
            raise UnknownVariable(v)
        i = self.variables.index(v)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                new = list(e)
                new[i] -= 1
                terms[tuple(new)] = c * e[i]
        return Poly._raw(self.variables, terms)

    def subs(self, bindings):
        """Substitute polynomials (or numbers) for variables; returns a Poly."""
        bindings = {k: as_poly(v) for k, v in bindings.items() if k in self.variables}
        if not bindings:
            return self
        keep = [i for i, v in enumerate(self.variables) if v not in bindings]
        bound = [(i, bindings[v]) for i, v in enumerate(self.variables) if v in bindings]
        kept_vars = tuple(self.variables[i] for i in keep)
        allvars = set(kept_vars)
        for _, q in bound:
            allvars.update(q.variables)
        allvars = tuple(sorted(allvars))
        powers = {}
        result = Poly._raw(allvars, {})
        for e, c in self.terms.items():
            mono = Poly._raw(kept_vars, {tuple(e[i] for i in keep): c})
            for i, q in bound:
                k = e[i]
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = q ** k
                    mono = mono * powers[key]
            result = result + mono
        return result

    def evaluate(self, values):
        """Fully evaluate at rational values; every occurring variable must be bound."""
        total = Fraction(0)
        vals = [values.get(v) for v in self.variables]
        for e, c in self.terms.items():
            term = c
            for name, k, x in zip(self.variables, e, vals):
                if k:
                    if x is None:
                        raise UnknownVariable(name)
                    term *= _frac(x) ** k
            total += term
        return total

    def collect(self, variables):
        """Split into {exponents over ``variables``: coefficient Poly in the others}."""
        variables = tuple(variables)
        p = self.extend(variables)
        idx = [p.variables.index(v) for v in variables]
        rest = [i for i in range(len(p.variables)) if i not in idx]
        rest_vars = tuple(p.variables[i] for i in rest)
        out = {}
        for e, c in p.terms.items():
            key = tuple(e[i] for i in idx)
            out.setdefault(key, {})[tuple(e[i] for i in rest)] = c
        return {k: Poly._raw(rest_vars, t) for k, t in out.items()}

    def coefficient(self, powers):
        """Coefficient Poly of the monomial ``powers`` (name -> exponent) in those variables."""
        names = tuple(powers)
        return self.collect(names).get(tuple(powers[n] for n in names), Poly.const(0))

    # -- division and content ---------------------------------------------
    def divide(self, other):
        """Exact quotient ``self / other``; raises NotDivisible otherwise."""
        other = as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        a, b = self._aligned(other)
        lead_e, lead_c = b.leading()
        rem = a
        quot = {}
        while rem.terms:
            e, c = rem.leading()
            diff = tuple(x - y for x, y in zip(e, lead_e))
            if any(k < 0 for k in diff):
                raise NotDivisible(f"{self} is not divisible by {other}")
            q = c / lead_c
            quot[diff] = quot.get(diff, 0) + q
            rem = rem - Poly._raw(b.variables, {diff: q}) * b
        return Poly._raw(a.variables, {e: c for e, c in quot.items() if c})

    def divides(self, other):
        try:
            as_poly(other).divide(self)
        except NotDivisible:
            return False
        return True

    def content(self):
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = 0
        for n in nums:
            g = gcd(g, n)
        return Fraction(g, lcm(*dens))

    def primitive(self):
        """Integer-coefficient primitive part with positive grlex-leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coeff() < 0:
            c = -c
        return self * (1 / c)

    def monic(self):
        return self * (1 / self.leading_coeff())

    # -- display -----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def _mono_str(self, e):
        parts = []
        for v, k in zip(self.variables, e):
            if k == 1:
                parts.append(v)
            elif k:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self._mono_str(e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly({str(self)!r})"


def as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    if isinstance(x, Rational):
        return Poly.const(Fraction(x))
    return NotImplemented


def poly_gcd(p, q):
    """Greatest common divisor over Q, returned primitive with positive leading coefficient.

    Multivariate gcd is delegated to sympy's sparse polynomial rings.
    """
    p, q = as_poly(p), as_poly(q)
    if p.is_zero:
        return q.primitive()
    if q.is_zero:
        return p.primitive()
    if p.is_constant or q.is_constant:
        return Poly.const(1)
    a, b = p._aligned(q)
    a, b = a.trim(), b.trim()
    a, b = a._aligned(b)
    if not a.variables:
        return Poly.const(1)
    from sympy.polys.domains import QQ
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(a.variables), QQ)
    pa = R.from_dict({e: QQ(c.numerator, c.denominator) for e, c in a.terms.items()})
    pb = R.from_dict({e: QQ(c.numerator, c.denominator) for e, c in b.terms.items()})
    g = pa.gcd(pb)
    terms = {}
    for e, c in g.to_dict().items():
        terms[tuple(e)] = Fraction(int(c.numerator), int(c.denominator))
    return Poly._raw(a.variables, terms).primitive()
