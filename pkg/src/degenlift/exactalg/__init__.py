"""Exact arithmetic kernel: rationals, polynomials, rational functions, series."""

from fractions import Fraction as Rat

from .linalg import LinearSolution, normalize_condition, nullspace, rank, solve_linear
from .parse import ExpressionError, parse_poly
from .poly import Poly, as_poly, poly_gcd
from .ratfunc import RatFunc, as_ratfunc, ratfunc_normalize
from .series import Series, poly_substitute, series_invert


def poly_arith(op, p, q):
    """Dispatch ``add``/``mul``/``pow`` on polynomials (``q`` is the exponent for pow)."""
    if op == "add":
        return as_poly(p) + as_poly(q)
    if op == "mul":
        return as_poly(p) * as_poly(q)
    if op == "pow":
        return as_poly(p) ** q
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_partial(p, v):
    return as_poly(p).partial(v)


P = parse_poly

__all__ = [
    "Rat",
    "Poly",
    "RatFunc",
    "Series",
    "LinearSolution",
    "ExpressionError",
    "as_poly",
    "as_ratfunc",
    "poly_gcd",
    "poly_arith",
    "poly_partial",
    "poly_substitute",
    "series_invert",
    "ratfunc_normalize",
    "normalize_condition",
    "solve_linear",
    "nullspace",
    "rank",
    "parse_poly",
    "P",
]
