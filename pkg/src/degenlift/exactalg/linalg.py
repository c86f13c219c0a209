"""Exact linear systems over the field of rational functions in the parameters.

Elimination is fraction-free (Bareiss) on polynomial entries: rows are scaled to
clear denominators, every update is an exact polynomial division, and pivots
are taken in the given row order (first usable row wins).  Rows that become
zero on the left leave a polynomial on the right; those are the consistency
conditions.  Each condition is saturated by the pivots used, because the
elimination is only valid where the pivots are nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import Poly, as_poly, poly_gcd
from .ratfunc import RatFunc, as_ratfunc

__all__ = ["LinearSolution", "solve_linear", "normalize_condition", "nullspace", "rank"]


@dataclass
class LinearSolution:
    values: list  # RatFunc per unknown (free unknowns set to 0); None when inconsistent
    conditions: list  # normalized Polys that must vanish for consistency
    pivots: list  # pivot column indices
    free: list  # free column indices
    pivot_polys: list = field(default_factory=list)

    @property
    def consistent(self):
        return not self.conditions

    @property
    def unique(self):
        return not self.free


def normalize_condition(p):
    """Primitive integer polynomial with positive grlex-leading coefficient (0 stays 0)."""
    p = as_poly(p).trim()
    if p.is_zero:
        return p
    if p.is_constant:
        return Poly.const(1)
    return p.primitive()


def _clear_row(row):
    dens = [as_ratfunc(x).den for x in row]
    common = Poly.const(1)
    for d in dens:
        if d.is_constant:
            continue
        g = poly_gcd(common, d)
        common = common * d.divide(g)
    out = []
    for x in row:
        x = as_ratfunc(x)
        out.append(x.num * common.divide(x.den) if not x.den.is_constant else x.num * common)
    return out


def _saturate(cond, pivots):
    for piv in pivots:
        if piv.is_constant:
            continue
        while True:
            g = poly_gcd(cond, piv)
            if g.is_constant:
                break
            cond = cond.divide(g)
    return cond


def solve_linear(matrix, rhs):
    """Solve ``matrix * x = rhs`` over Q(parameters).

    ``matrix`` is a list of rows (entries: numbers, Polys or RatFuncs); ``rhs``
    one entry per row.  Returns a :class:`LinearSolution`; when inconsistent,
    ``values`` is None and ``conditions`` lists the normalized obstructions.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    rows = [_clear_row(list(matrix[i]) + [rhs[i]]) for i in range(nrows)]
    prev = Poly.const(1)
    pivots = []
    pivot_polys = []
    r = 0
    for c in range(ncols):
        piv_row = next((i for i in range(r, nrows) if not rows[i][c].is_zero), None)
        if piv_row is None:
            continue
        rows[r], rows[piv_row] = rows[piv_row], rows[r]
        p = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            new = []
            for j in range(ncols + 1):
                v = p * rows[i][j] - a * rows[r][j]
                new.append(v if prev == 1 else v.divide(prev))
            rows[i] = new
        prev = p
        pivots.append(c)
        pivot_polys.append(p)
        r += 1
    conditions = []
    for i in range(r, nrows):
        cond = rows[i][ncols]
        if cond.is_zero:
            continue
        cond = normalize_condition(_saturate(cond.trim(), pivot_polys))
        if cond not in conditions:
            conditions.append(cond)
    conditions.sort(key=lambda q: (q.total_degree(), str(q)))
    free = [c for c in range(ncols) if c not in pivots]
    if conditions:
        return LinearSolution(None, conditions, pivots, free, pivot_polys)
    values = [RatFunc.from_poly(Poly())] * ncols
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        acc = RatFunc.from_poly(rows[k][ncols])
        for j in range(c + 1, ncols):
            if not rows[k][j].is_zero and values[j]:
                acc = acc - RatFunc.from_poly(rows[k][j]) * values[j]
        values[c] = acc / RatFunc.from_poly(rows[k][c])
    return LinearSolution(values, [], pivots, free, pivot_polys)


def rank(matrix):
    if not matrix:
        return 0
    sol = solve_linear(matrix, [0] * len(matrix))
    return len(sol.pivots)


def nullspace(matrix):
    """Basis of the right kernel over Q(parameters), one RatFunc vector per free column."""
    ncols = len(matrix[0])
    sol = solve_linear(matrix, [0] * len(matrix))
    basis = []
    for f in sol.free:
        rhs = [-as_ratfunc(row[f]) for row in matrix]
        sub = [[row[c] for c in sol.pivots] for row in matrix]
        part = solve_linear(sub, rhs)
        vec = [RatFunc.from_poly(Poly())] * ncols
        vec[f] = RatFunc.from_poly(Poly.const(1))
        for c, v in zip(sol.pivots, part.values):
            vec[c] = v
        basis.append(vec)
    return basis
