"""Local frames at singular points, residues, and the Kuranishi scalar of a line.

Near an ordinary singular point p on an edge, the total equation reads
X*Y*P + t*f = 0, where X is the in-component coordinate vanishing on the edge,
Y the coordinate normal to the component, u the edge coordinate (u = alpha at
p) and P the product of the remaining factors in the chart (a unit at p).
Dividing f canonically as

    f = (u - alpha)*f1 + X*f2 + Y*f3

and putting f4 = f3/P, f5 = -f2*f3/P turns the equation into the model
(X + t*f4)(Y*P + t*f2) + t*((u - alpha)*f1 + t*f5) = 0.  The first-order
residue at p is the constant b1 solving b1*f1(0) + f5(0) = -f4(0)*h1(0) with
h1(0) = -slope*f1(0).

The residues of the three crossings of a line are paired with the relation
sum_i sigma_i * dlog(u_i) = 0 satisfied by the edge coordinates of the
crossings of any line in the plane; sigma_i is the sign of the permutation
(u_i, chart_i, X_i) of the plane's coordinates.  A residue b shifts the
crossing by b in u, so the pairing weight is -sigma/alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenliftError, LineMissesPoint, NotOrdinary, ObstructedAtLowerOrder
from .exactalg import Poly, RatFunc, normalize_condition, solve_linear
from .family import is_ordinary_singularity, singular_point_at
from .lifter import lift_ansatz, lift_solve, order_system
from .lines import contains, hyperplane_intersection
from .sheaf import cohomology_P1, log_normal_degree

__all__ = [
    "LocalFrame",
    "ResidueDatum",
    "KuranishiValue",
    "LogVector",
    "local_frame",
    "first_order_residue",
    "pairing_weight",
    "crossings",
    "kuranishi_first_order",
    "kuranishi_higher",
    "log_tangent_membership",
    "LOG_TANGENT_GENERATORS",
]


@dataclass(frozen=True)
class LocalFrame:
    point: object
    u: str
    X: str
    Y: str
    alpha: Fraction
    slope: RatFunc
    P: Poly
    f1: Poly
    f2: Poly
    f3: Poly
    f4: RatFunc
    f5: RatFunc
    unit_check: RatFunc
    order: str = "canonical"

    def at_point(self, g):
        """Value of a frame polynomial (or RatFunc) at the singular point."""
        binding = {self.u: self.alpha, self.X: 0, self.Y: 0}
        if isinstance(g, RatFunc):
            return g.subs(binding)
        return RatFunc.from_poly(g.subs(binding))


@dataclass(frozen=True)
class ResidueDatum:
    frame: LocalFrame
    order: int
    b: RatFunc
    h1: RatFunc


@dataclass(frozen=True)
class KuranishiValue:
    order: int
    value: RatFunc
    vanishing_condition: Poly
    terms: tuple = field(default=(), compare=False)  # (point label, weight, residue)
    note: str = ""

    @property
    def vanishes(self):
        return self.value.is_zero


def _kuranishi_value(order, value, terms=(), note=""):
    num = value.num
    cond = normalize_condition(num)
    return KuranishiValue(order, value, cond, tuple(terms), note)


def _component_of(spec, line):
    if line.component is not None:
        return line.component
    return lift_ansatz(spec, line).component


def _frame_coords(spec, line, p):
    comp = _component_of(spec, line)
    (Y,) = comp.zero_coords
    edge_zero = list(p.host.zero_coords)
    if Y not in edge_zero:
        raise DegenliftError(f"point {p.label()} is not on an edge of the line's component")
    (X,) = [c for c in edge_zero if c != Y]
    return comp, X, Y


def _slope(spec, line, comp, X, u, chart):
    plane = [c for c in spec.coords if c not in comp.zero_coords]
    eqs = [eq for eq in line.equations if any(eq[spec.coords.index(c)] for c in plane)]
    (eq,) = eqs
    lx = Fraction(eq[spec.coords.index(X)])
    lu = Fraction(eq[spec.coords.index(u)])
    if lu == 0:
        raise DegenliftError("line is parallel to the edge in this chart")
    return -lx / lu


def local_frame(spec, line, p, order="canonical"):
    """Canonical (or swapped) local decomposition of f at the singular point p."""
    if not contains(line, p.homogeneous_point):
        raise LineMissesPoint(f"line {line} does not pass through {p.label()}")
    if not is_ordinary_singularity(spec, p):
        raise NotOrdinary(f"{p.label()} is not an ordinary singular point")
    comp, X, Y = _frame_coords(spec, line, p)
    u, chart, alpha = p.u_coord, p.chart, p.coordinate
    f = spec.f.subs({chart: 1})
    P = Poly.const(1)
    names = spec.require_coordinate_factors()
    for c in names:
        if c not in (X, Y, chart):
            P = P * Poly.var(c)
    z = Poly.var(u) - alpha
    g0 = f.subs({X: 0, Y: 0})
    f1 = g0.divide(z)
    r = f - g0
    Xp, Yp = Poly.var(X), Poly.var(Y)
    if order == "canonical":
        f2 = r.subs({Y: 0}).divide(Xp)
        f3 = (r - Xp * f2).divide(Yp)
    elif order == "swapped":
        f3 = r.subs({X: 0}).divide(Yp)
        f2 = (r - Yp * f3).divide(Xp)
    else:
        raise ValueError("order is 'canonical' or 'swapped'")
    f4 = RatFunc(f3, P)
    f5 = RatFunc(-(f2 * f3), P)
    unit = RatFunc.from_poly(f1.subs({u: alpha, X: 0, Y: 0}))
    if unit.is_zero:
        raise NotOrdinary(f"f1 vanishes at {p.label()}")
    slope = RatFunc.from_poly(Poly.const(_slope(spec, line, comp, X, u, chart)))
    return LocalFrame(p, u, X, Y, alpha, slope, P, f1, f2, f3, f4, f5, unit, order)


def first_order_residue(frame):
    """b1 = (-f4(0)*h1(0) - f5(0)) / f1(0), h1(0) = -slope*f1(0)."""
    f1 = frame.unit_check
    h1 = -(frame.slope * f1)
    b = (-(frame.at_point(frame.f4) * h1) - frame.at_point(frame.f5)) / f1
    return ResidueDatum(frame, 1, b, h1)


def _perm_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def pairing_weight(spec, comp, p, X):
    """Weight -sigma/alpha of the residue at p in the Kuranishi sum."""
    plane = [c for c in spec.coords if c not in comp.zero_coords]
    sigma = _perm_sign([plane.index(p.u_coord), plane.index(p.chart), plane.index(X)])
    return Fraction(-sigma) / p.coordinate


def crossings(spec, line):
    """Points where the line meets the edges of its component, as SingularPoint-like data."""
    comp = _component_of(spec, line)
    out = []
    for edge in spec.edges_of(comp):
        (X,) = [c for c in edge.zero_coords if c not in comp.zero_coords]
        form = tuple(1 if c == X else 0 for c in spec.coords)
        pt = hyperplane_intersection(line, form)
        if pt is None:
            raise DegenliftError(f"line {line} lies in the divisor {edge.label()}")
        out.append((edge, X, pt))
    return comp, out


def _h1_vanishes(hits):
    return cohomology_P1(log_normal_degree(1, hits))[1] == 0


def kuranishi_first_order(spec, line, order="canonical"):
    """Weighted sum of the first-order residues over the crossings of the line."""
    comp, pts = crossings(spec, line)
    if _h1_vanishes(len(pts)):
        return _kuranishi_value(1, RatFunc.from_poly(Poly()), (), "obstruction space vanishes")
    total = RatFunc.from_poly(Poly())
    terms = []
    for edge, X, pt in pts:
        p = singular_point_at(spec, pt)
        frame = local_frame(spec, line, p, order)
        b = first_order_residue(frame).b
        w = pairing_weight(spec, comp, p, X)
        total = total + b * w
        terms.append((p.label(), w, b))
    return _kuranishi_value(1, total, terms)


def _homog_eval(coeffs, degree, point):
    """Evaluate sum_i coeffs[i] s^i, homogenized to ``degree``, at (s : sigma)."""
    s, sigma = point
    total = Fraction(0)
    for i, c in enumerate(coeffs):
        if c:
            total += c * s**i * sigma ** (degree - i)
    return total


def _const(r):
    if not r.is_constant:
        raise DegenliftError("parameters must be specialized for this computation")
    return r.constant_value()


def _u_shift(spec, ansatz, edge, X, point, D):
    """First-order change of the edge coordinate of a crossing when dep moves by D there."""
    order = [ansatz.param, ansatz.dep, ansatz.chart]

    def coords_at(sv, dep_shift):
        s, sigma = sv
        vals = {ansatz.param: s, ansatz.dep: ansatz.slope * s + ansatz.intercept * sigma + dep_shift,
                ansatz.chart: sigma}
        return vals

    s0, sig0 = point
    perp = (Fraction(1), Fraction(0)) if sig0 != 0 else (Fraction(0), Fraction(1))
    base = coords_at(point, 0)
    dperp = {c: coords_at(perp, 0)[c] for c in order}
    deps = {c: (D if c == ansatz.dep else Fraction(0)) for c in order}
    # X(point + tau*perp) + eps*dX = 0  ->  tau' = -dX / X(perp)
    if dperp[X] == 0:
        raise DegenliftError("degenerate crossing")
    tau = -deps[X] / dperp[X]
    free = spec.free_coords(edge)
    chart = free[-1]
    (u,) = [c for c in free if c != chart]
    num, den = base[u], base[chart]
    dnum = tau * dperp[u] + deps[u]
    dden = tau * dperp[chart] + deps[chart]
    return (dnum * den - num * dden) / den**2, num / den, u, chart


def kuranishi_higher(spec, line, k, values=None):
    """Order-k Kuranishi scalar for a specialized family (k >= 1).

    The lift is solved through t^k; at the crossings of the line the order-(k+1)
    equation forces the in-plane displacement D_i = -E(p_i)/G(p_i), and the
    value is the weighted dlog sum of the resulting crossing shifts, which
    vanishes exactly when the displacements come from a moving line.
    """
    if values:
        spec = spec.specialize(values)
    if spec.params:
        raise DegenliftError(f"specialize the parameters {list(spec.params)} first")
    if k < 1:
        raise ValueError("order must be at least 1")
    comp, pts = crossings(spec, line)
    if _h1_vanishes(len(pts)):
        return _kuranishi_value(k, RatFunc.from_poly(Poly()), (), "obstruction space vanishes")
    if k > 1:
        res = lift_solve(spec, line, k)
        if not res.solved:
            raise ObstructedAtLowerOrder(res.status[1] - 1, res.ideal[0] if res.ideal else None)
        vals, ansatz = res.values, res.ansatz
    else:
        lift = lift_solve(spec, line, 1)
        if not lift.solved:
            raise DegenliftError("line does not satisfy the incidence condition")
        vals, ansatz = lift.values, lift.ansatz
    system = order_system(spec, ansatz, vals, k + 1)
    col_b = system.unknowns.index(f"b{k}")
    G = [_const(row[col_b]) for row in system.matrix]
    E0 = [-_const(r) for r in system.rhs]
    total = Fraction(0)
    terms = []
    for edge, X, pt in pts:
        vals_pt = dict(zip(spec.coords, pt))
        sv = (vals_pt[ansatz.param], vals_pt[ansatz.chart])
        g = _homog_eval(G, spec.d - 1, sv)
        if g == 0:
            raise NotOrdinary(f"crossing {pt} is not transverse for the lift")
        D = -_homog_eval(E0, spec.d, sv) / g
        shift, alpha, u, chart = _u_shift(spec, ansatz, edge, X, sv, D)
        sigma = _perm_sign([[c for c in spec.coords if c != ansatz.normal].index(c) for c in (u, chart, X)])
        w = Fraction(-sigma) / alpha
        total += w * shift
        terms.append((str(pt), w, shift))
    return _kuranishi_value(k, RatFunc.from_poly(Poly.const(total)), terms)


class LogVector:
    """A logarithmic vector field sum_v c_v * v d/dv, stored as {v: coefficient}."""

    BASIS = ("x", "y", "z", "w", "t")

    def __init__(self, coeffs):
        self.coeffs = {}
        for v, c in dict(coeffs).items():
            if v not in self.BASIS:
                raise ValueError(f"unknown log direction {v}")
            c = c if isinstance(c, RatFunc) else RatFunc.from_poly(Poly.const(c) if not isinstance(c, Poly) else c)
            if c:
                self.coeffs[v] = c

    def __add__(self, other):
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out[v] + c if v in out else c
        return LogVector(out)

    def __rmul__(self, c):
        return LogVector({v: x * c for v, x in self.coeffs.items()})

    def __neg__(self):
        return LogVector({v: -x for v, x in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def vector(self):
        zero = RatFunc.from_poly(Poly())
        return [self.coeffs.get(v, zero) for v in self.BASIS]

    def __str__(self):
        parts = [f"({c})*{v}d{v}" for v, c in self.coeffs.items()]
        return " + ".join(parts) or "0"


LOG_TANGENT_GENERATORS = (
    LogVector({"x": 1, "y": -1}),
    LogVector({"y": 1, "z": -1}),
    LogVector({"w": 1, "t": -1}),
    LogVector({"z": 1, "w": 1}),
)


def log_tangent_membership(v, generators=LOG_TANGENT_GENERATORS):
    """Whether v is a combination of the generators along the curve z=t=0, x=a*w, y=b*w."""
    curve = {"z": Poly(), "t": Poly(), "x": Poly.var("a") * Poly.var("w"), "y": Poly.var("b") * Poly.var("w")}
    target = [c.subs(curve) for c in v.vector()]
    columns = [[c.subs(curve) for c in g.vector()] for g in generators]
    matrix = [[col[i] for col in columns] for i in range(len(LogVector.BASIS))]
    return solve_linear(matrix, target).consistent
