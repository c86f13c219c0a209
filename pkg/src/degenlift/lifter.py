"""Order-by-order lifting of a line off the central fiber.

The line lies in a plane component {c = 0}.  In the chart where the last
in-plane coordinate is 1, the first in-plane coordinate is the curve parameter
s, the remaining one ("dep") is the line's affine function of s, and c itself
is the normal direction.  The ansatz is

    param  = s
    dep    = line(s) + sum_k t^k (a_k s + b_k)
    normal = sum_k t^k (c_k s + d_k)

Substituting into the total equation and reading the coefficient of t^k gives
a linear system in (a_{k-1}, b_{k-1}, c_k, d_k), one row per power of s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AnsatzError, DegenliftError
from .exactalg import (
    Poly,
    RatFunc,
    Series,
    as_poly,
    normalize_condition,
    nullspace,
    poly_gcd,
    poly_substitute,
    solve_linear,
)
from .family import total_equation

__all__ = [
    "LiftAnsatz",
    "OrderSystem",
    "LiftResult",
    "lift_ansatz",
    "order_system",
    "lift_solve",
    "obstruction_ideal",
    "model_case_check",
]

S, T = "s", "t"


@dataclass(frozen=True)
class LiftAnsatz:
    component: object
    normal: str
    param: str
    dep: str
    chart: str
    slope: Fraction  # dep = slope * s + intercept on the central fiber
    intercept: Fraction
    reparametrize: bool = False

    def unknowns(self, k):
        """Unknown names solved from the coefficient of t^k."""
        names = []
        if k >= 2:
            names += [f"a{k - 1}", f"b{k - 1}"]
            if self.reparametrize and k == 2:
                names.append("r1")
        names += [f"c{k}", f"d{k}"]
        return names


@dataclass
class OrderSystem:
    order: int
    unknowns: list
    matrix: list  # rows = powers of s (lowest first), RatFunc entries
    rhs: list
    values: dict = field(default_factory=dict)
    conditions: list = field(default_factory=list)
    reduced: list = field(default_factory=list)  # constraints on the in-plane unknowns only
    forced: dict = field(default_factory=dict)  # in-plane unknowns pinned by one reduced constraint
    unique: bool = True

    @property
    def consistent(self):
        return not self.conditions


@dataclass
class LiftResult:
    ansatz: LiftAnsatz
    requested: int
    systems: list
    values: dict
    ideal: list
    status: tuple  # ("solved", N) or ("obstructed", k)

    @property
    def solved(self):
        return self.status[0] == "solved"

    def value(self, name):
        return self.values[name]


def lift_ansatz(spec, line, reparametrize=False):
    comp = line.component
    if comp is None:
        zero = [c for c in spec.coords if all(p[spec.coords.index(c)] == 0 for p in line.points)]
        names = spec.require_coordinate_factors()
        idx = [names.index(c) for c in zero if c in names]
        if len(idx) != 1:
            raise AnsatzError("line must lie in exactly one plane component")
        comp = spec.component(idx[0])
    if spec.n != 3 or len(comp.zero_coords) != 1:
        raise AnsatzError("the lifting ansatz needs a line in a plane component of a degeneration in P^3")
    (normal,) = comp.zero_coords
    plane = [c for c in spec.coords if c != normal]
    param, dep, chart = plane[0], plane[1], plane[2]
    eqs = [eq for eq in line.equations if any(eq[spec.coords.index(c)] for c in plane)]
    if len(eqs) != 1:
        raise AnsatzError("line is not a line in the component's plane")
    (eq,) = eqs
    lp, ld, lc = (Fraction(eq[spec.coords.index(c)]) for c in (param, dep, chart))
    if lp == 0 or ld == 0 or lc == 0:
        raise AnsatzError(f"line {line} passes through a torus-fixed point; the ansatz does not apply")
    return LiftAnsatz(comp, normal, param, dep, chart, -lp / ld, -lc / ld, reparametrize)


def _binding(ansatz, values, k, symbolic, s_order):
    """Series for the three chart coordinates and the normal one, through t^k.

    ``symbolic`` names are kept as polynomial variables; other coefficients come
    from ``values`` (missing ones are 0).
    """
    dvars, orders = (S, T), (s_order, k)

    def coeff(name):
        if name in symbolic:
            return RatFunc.from_poly(Poly.var(name))
        return values.get(name, RatFunc.from_poly(Poly()))

    s = Series.gen(S, dvars, orders)
    t = Series.gen(T, dvars, orders)
    param = s
    dep = s * ansatz.slope + ansatz.intercept
    normal = Series.const(0, dvars, orders)
    tk = Series.const(1, dvars, orders)
    for j in range(1, k + 1):
        tk = tk * t
        dep = dep + tk * (s * coeff(f"a{j}") + coeff(f"b{j}"))
        normal = normal + tk * (s * coeff(f"c{j}") + coeff(f"d{j}"))
        if ansatz.reparametrize and j == 1:
            param = param + tk * coeff("r1")
    return {ansatz.param: param, ansatz.dep: dep, ansatz.normal: normal,
            ansatz.chart: Series.const(1, dvars, orders)}


def _residual(spec, ansatz, values, k, symbolic=()):
    bindings = _binding(ansatz, values, k, set(symbolic), spec.d + 2)
    total = total_equation(spec)
    expanded = poly_substitute(total, bindings)
    return expanded.slice(T, k)


def order_system(spec, ansatz, values, k):
    """Linear system (rows = powers of s) for the coefficient of t^k."""
    unknowns = ansatz.unknowns(k)
    coeff_series = _residual(spec, ansatz, values, k, unknowns)
    degree = coeff_series.degree(S)
    if degree > spec.d + 1:
        raise DegenliftError(f"order-{k} residual has s-degree {degree} > {spec.d + 1}")
    matrix, rhs = [], []
    for i in range(max(degree, 0) + 1):
        c = coeff_series[(i,)]
        row, const = _split_linear(c, unknowns)
        matrix.append(row)
        rhs.append(-const)
    return OrderSystem(k, unknowns, matrix, rhs)


def _split_linear(c, unknowns):
    num, den = c.num, c.den
    present = [u for u in unknowns if u in num.variables]
    parts = num.collect(present)
    row = []
    for exps in parts:
        if sum(exps) > 1:
            raise DegenliftError("order system is not linear in its unknowns")
    for u in unknowns:
        key = tuple(1 if v == u else 0 for v in present)
        p = parts.get(key, Poly()) if u in present else Poly()
        row.append(RatFunc(p, den))
    zero = tuple(0 for _ in present)
    const = RatFunc(parts.get(zero, Poly()), den)
    return row, const


def _reduce(system, inplane):
    """Eliminate the normal unknowns: constraints on the in-plane unknowns only."""
    if not inplane:
        return []
    normal_cols = [j for j, u in enumerate(system.unknowns) if u not in inplane]
    # left kernel of the normal columns, applied to the full system
    transposed = [[system.matrix[i][j] for i in range(len(system.matrix))] for j in normal_cols]
    kernel = nullspace(transposed) if transposed else [
        [RatFunc.from_poly(Poly.const(1 if i == r else 0)) for i in range(len(system.matrix))]
        for r in range(len(system.matrix))
    ]
    in_cols = [j for j, u in enumerate(system.unknowns) if u in inplane]
    out = []
    for vec in kernel:
        coeffs = []
        for j in in_cols:
            acc = RatFunc.from_poly(Poly())
            for i, m in enumerate(vec):
                if m:
                    acc = acc + m * system.matrix[i][j]
            coeffs.append(acc)
        const = RatFunc.from_poly(Poly())
        for i, m in enumerate(vec):
            if m:
                const = const - m * system.rhs[i]
        out.append(_constraint_poly(coeffs, [system.unknowns[j] for j in in_cols], const))
    return [c for c in out if not c.is_zero]


def _forced(reduced, inplane):
    """Unknowns fixed outright by a reduced constraint of the form c*u + r(params)."""
    out = {}
    for c in reduced:
        present = [u for u in inplane if u in c.occurring()]
        if len(present) != 1:
            continue
        (u,) = present
        parts = c.collect([u])
        if set(parts) != {(1,), (0,)} and set(parts) != {(1,)}:
            continue
        lead = parts[(1,)]
        if not lead.is_constant:
            continue
        out[u] = RatFunc.from_poly(-parts.get((0,), Poly()) / lead.constant_value())
    return out


def _constraint_poly(coeffs, names, const):
    """sum coeff*name + const as one normalized polynomial (denominators cleared)."""
    den = Poly.const(1)
    for r in list(coeffs) + [const]:
        if not r.den.is_constant:
            g = poly_gcd(den, r.den)
            den = den * r.den.divide(g)
    total = _cleared(const, den)
    for r, n in zip(coeffs, names):
        total = total + _cleared(r, den) * Poly.var(n)
    return normalize_condition(total)


def _cleared(r, den):
    if r.den.is_constant:
        return r.num * den / r.den.constant_value()
    return r.num * den.divide(r.den)


def lift_solve(spec, line, N, reparametrize=False, stop_at_obstruction=True):
    """Solve the lifting equations through t^N."""
    if N < 1:
        raise ValueError("lifting order must be at least 1")
    ansatz = lift_ansatz(spec, line, reparametrize)
    values = {}
    systems = []
    ideal = []
    status = ("solved", N)
    for k in range(1, N + 1):
        system = order_system(spec, ansatz, values, k)
        inplane = [u for u in system.unknowns if not u.startswith(("c", "d"))]
        system.reduced = _reduce(system, inplane)
        system.forced = _forced(system.reduced, inplane)
        sol = solve_linear(system.matrix, system.rhs)
        system.unique = sol.unique
        systems.append(system)
        if sol.conditions:
            system.conditions = sol.conditions
            ideal.extend(c for c in sol.conditions if c not in ideal)
            status = ("obstructed", k)
            values.update(system.forced)
            if stop_at_obstruction:
                break
            continue
        for name, v in zip(system.unknowns, sol.values):
            system.values[name] = v
            values[name] = v
    return LiftResult(ansatz, N, systems, values, ideal, status)


def obstruction_ideal(spec, line, N, reparametrize=False):
    return lift_solve(spec, line, N, reparametrize).ideal


def model_case_check(zeta, N):
    """Lift the curve X = s, Z = s*zeta(s), Y = 0 in XY + tZ = 0 through t^N.

    Unknowns at order k are the coefficients of Y_k(s) and of the correction
    Z_{k-1}(s).  Returns True when every order is solvable and forces the
    constant term of each Z-correction to vanish, i.e. every correction is
    divisible by s.
    """
    zeta = as_poly(zeta)
    if set(zeta.occurring()) - {S}:
        raise ValueError("zeta must be a polynomial in s")
    width = max(zeta.degree(S) if S in zeta.variables else 0, 0) + 2
    z_prev = Poly.var(S) * zeta  # Z_0
    for k in range(1, N + 1):
        # X*Y_k + Z_{k-1} = 0 with Y_k, Z_{k-1} unknown of degree < width (Z_0 is given)
        ny = width
        nz = width if k > 1 else 0
        rows, rhs = [], []
        for i in range(width + 1):
            row = [Fraction(1) if j == i - 1 else Fraction(0) for j in range(ny)]
            row += [Fraction(1) if j == i else Fraction(0) for j in range(nz)]
            rows.append(row)
            rhs.append(-z_prev.coefficient({S: i}) if k == 1 else Fraction(0))
        sol = solve_linear(rows, rhs)
        if sol.conditions:
            return False
        if nz:
            # adding "constant term of Z_{k-1} is 1" must be inconsistent
            forced = solve_linear(rows + [[0] * ny + [1] + [0] * (nz - 1)], rhs + [1])
            if not forced.conditions:
                return False
        z_prev = Poly()
    return True
