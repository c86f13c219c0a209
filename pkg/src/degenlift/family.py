"""Degenerations prod(a_i) + t*f = 0 of hypersurfaces in P^n.

The central fiber is the union of the hyperplanes a_i = 0.  When every linear
factor is a coordinate (all the standard cases), the strata of the central
fiber are coordinate subspaces and the singular points of the total space on an
edge are the zeros of f restricted to that edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from sympy import divisors

from .errors import DegenerateSingularity, DegenliftError, UnknownVariable
from .exactalg import Poly, as_poly, poly_gcd

__all__ = [
    "FamilySpec",
    "Stratum",
    "SingularPoint",
    "EdgeLocus",
    "total_equation",
    "restrict_to_stratum",
    "singular_points_on_edge",
    "is_ordinary_singularity",
    "normalize_point",
    "singular_point_at",
]

T = "t"


def normalize_point(point):
    """Scale a homogeneous point so its last nonzero coordinate is 1."""
    point = [Fraction(c) for c in point]
    last = next((c for c in reversed(point) if c), None)
    if last is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(c / last for c in point)


@dataclass(frozen=True)
class FamilySpec:
    n: int
    coords: tuple
    factors: tuple
    f: Poly
    params: tuple = ()
    chart: str | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        object.__setattr__(self, "factors", tuple(as_poly(a) for a in self.factors))
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "f", as_poly(self.f))
        if self.n < 2:
            raise ValueError("ambient dimension must be at least 2")
        if len(self.coords) != self.n + 1 or len(set(self.coords)) != len(self.coords):
            raise ValueError(f"need {self.n + 1} distinct coordinate names")
        if self.d < 2:
            raise ValueError("degree (number of linear factors) must be at least 2")
        if T in self.coords or T in self.params or set(self.coords) & set(self.params):
            raise ValueError("coordinate, parameter and 't' names must be distinct")
        for a in self.factors:
            if a.is_zero or not set(a.occurring()) <= set(self.coords):
                raise ValueError(f"linear factor {a} must be a nonzero form in the coordinates")
            if a.total_degree() != 1 or not a.is_homogeneous():
                raise ValueError(f"factor {a} is not a linear form")
        extra = set(self.f.occurring()) - set(self.coords) - set(self.params)
        if extra:
            raise UnknownVariable(f"f uses undeclared variables {sorted(extra)}")
        if not self.f.is_zero and not self.f.is_homogeneous(self.coords, self.d):
            raise ValueError(f"f is not homogeneous of degree {self.d} in {self.coords}")
        if self.chart is not None and self.chart not in self.coords:
            raise ValueError(f"chart coordinate {self.chart} is not a coordinate")

    @property
    def d(self):
        return len(self.factors)

    @property
    def default_chart(self):
        return self.chart or self.coords[-1]

    def factor_coord(self, i):
        """Coordinate name of factor i, or None when the factor is not a coordinate."""
        a = self.factors[i]
        if len(a.terms) == 1 and a.leading_coeff() == 1:
            (v,) = a.occurring()
            return v
        return None

    def require_coordinate_factors(self):
        names = [self.factor_coord(i) for i in range(self.d)]
        if None in names or len(set(names)) != len(names):
            raise DegenliftError("strata are only modelled when the linear factors are distinct coordinates")
        return names

    # -- strata ------------------------------------------------------------
    def stratum(self, indices, chart=None):
        return Stratum(frozenset(indices), self.n, chart, tuple(self._zero_coords(indices)))

    def _zero_coords(self, indices):
        names = self.require_coordinate_factors()
        return sorted((names[i] for i in indices), key=self.coords.index)

    def component(self, i):
        return self.stratum([i])

    def components(self):
        return [self.component(i) for i in range(self.d)]

    def edges(self):
        """All dimension-one strata, each in its default chart."""
        k = self.n - 1
        out = []
        for idx in combinations(range(self.d), k):
            st = self.stratum(idx)
            out.append(st.with_chart(self.free_coords(st)[-1]))
        return out

    def edges_of(self, component):
        """Edges of the central fiber lying in ``component``."""
        return [e for e in self.edges() if component.indices <= e.indices]

    def free_coords(self, st):
        return [c for c in self.coords if c not in st.zero_coords]

    def specialize(self, values):
        """Substitute rational values for some or all parameters."""
        values = {k: Fraction(v) for k, v in values.items()}
        unknown = set(values) - set(self.params)
        if unknown:
            raise UnknownVariable(f"not parameters of this family: {sorted(unknown)}")
        return FamilySpec(
            self.n,
            self.coords,
            self.factors,
            self.f.subs(values),
            tuple(p for p in self.params if p not in values),
            self.chart,
            self.name,
        )


@dataclass(frozen=True)
class Stratum:
    indices: frozenset
    n: int
    chart: str | None
    zero_coords: tuple

    @property
    def dim(self):
        return self.n - len(self.indices)

    @property
    def kind(self):
        if self.dim == self.n - 1:
            return "component"
        if self.dim == 0:
            return "point"
        if self.dim == 1:
            return "edge"
        return "divisor"

    def with_chart(self, chart):
        return Stratum(self.indices, self.n, chart, self.zero_coords)

    def label(self):
        return "{" + ",".join(f"{c}=0" for c in self.zero_coords) + "}"


@dataclass(frozen=True)
class SingularPoint:
    host: Stratum
    chart: str
    u_coord: str
    coordinate: Fraction
    homogeneous_point: tuple

    def label(self):
        return "(" + ", ".join(str(c) for c in self.homogeneous_point) + ")"


@dataclass
class EdgeLocus:
    edge: Stratum
    points: list
    excluded: list = field(default_factory=list)
    unresolved: int = 0

    @property
    def complete(self):
        return self.unresolved == 0


def total_equation(spec):
    prod = Poly.const(1)
    for a in spec.factors:
        prod = prod * a
    return prod + Poly.var(T) * spec.f


def restrict_to_stratum(spec, st, f=None):
    """f with the stratum's coordinates set to zero (and its chart coordinate to 1)."""
    if st.dim < 1:
        raise ValueError("restriction to a point: evaluate f there instead")
    f = spec.f if f is None else f
    binding = {c: 0 for c in st.zero_coords}
    if st.chart is not None:
        binding[st.chart] = 1
    return f.subs(binding)


def _param_coefficients(poly, u, params):
    """Split a polynomial in u (with parameters) into univariate pieces, one per parameter monomial."""
    pieces = poly.collect([p for p in params if p in poly.variables])
    return [c.extend([u]) for c in pieces.values()]


def _rational_roots(g, u):
    """Nonzero rational roots of a univariate polynomial (rational-root test)."""
    g = g.extend([u]).trim()
    if g.is_zero or g.is_constant:
        return []
    val = min(e[0] for e in g.terms)
    if val:
        g = g.divide(Poly.monomial({u: val}))
    if g.is_constant:
        return []
    g = g.primitive()
    lead = int(g.leading_coeff())
    const = int(g.constant_value())
    roots = []
    for p in divisors(abs(const)):
        for q in divisors(abs(lead)):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if r not in roots and g.evaluate({u: r}) == 0:
                    roots.append(r)
    return sorted(roots)


def _u_valuation(poly, u):
    if u not in poly.variables:
        return 0
    i = poly.variables.index(u)
    return min(e[i] for e in poly.terms)


def singular_points_on_edge(spec, edge):
    """Rational singular points of the total space on ``edge``.

    Roots at the edge's two torus-fixed ends are reported in ``excluded``;
    roots that are irrational or move with the parameters are only counted.
    """
    if edge.dim != 1:
        raise ValueError("singular_points_on_edge needs a one-dimensional stratum")
    free = spec.free_coords(edge)
    chart = edge.chart or free[-1]
    (u,) = [c for c in free if c != chart]
    homog = restrict_to_stratum(spec, edge.with_chart(None))
    if homog.is_zero:
        raise DegenerateSingularity(f"f vanishes identically on the edge {edge.label()}")
    b = homog.subs({chart: 1})
    pieces = _param_coefficients(b, u, spec.params)
    g = Poly()
    for piece in pieces:
        g = poly_gcd(g, piece)
    at_infinity = spec.d - max(piece.degree(u) for piece in pieces)
    at_zero = min(_u_valuation(piece, u) for piece in pieces)
    roots = _rational_roots(g, u)
    db = b.partial(u) if u in b.variables else Poly()
    points, excluded = [], []
    found = 0
    for r in roots:
        if db.subs({u: r}).is_zero:
            raise DegenerateSingularity(f"repeated root {u}={r} on the edge {edge.label()}")
        found += 1
        points.append(_make_point(spec, edge.with_chart(chart), chart, u, r))
    if at_zero:
        excluded.append(_fixed_end(spec, free, u))
    if at_infinity:
        excluded.append(_fixed_end(spec, free, chart))
    unresolved = spec.d - found - at_zero - at_infinity
    return EdgeLocus(edge.with_chart(chart), points, excluded, unresolved)


def _fixed_end(spec, free, zero):
    vals = {c: Fraction(0) for c in spec.coords}
    for c in free:
        if c != zero:
            vals[c] = Fraction(1)
    return tuple(vals[c] for c in spec.coords)


def _make_point(spec, edge, chart, u, r):
    vals = {c: Fraction(0) for c in spec.coords}
    vals[chart] = Fraction(1)
    vals[u] = Fraction(r)
    homog = normalize_point(tuple(vals[c] for c in spec.coords))
    return SingularPoint(edge, chart, u, Fraction(r), homog)


def singular_point_at(spec, point, chart=None):
    """Wrap a homogeneous point lying on an edge as a SingularPoint (no checks beyond incidence)."""
    point = normalize_point(point)
    zero = [c for c, v in zip(spec.coords, point) if v == 0]
    names = spec.require_coordinate_factors()
    indices = [i for i, c in enumerate(names) if c in zero]
    if len(indices) != spec.n - 1:
        raise DegenliftError(f"point {point} does not lie on the interior of an edge")
    edge = spec.stratum(indices)
    free = spec.free_coords(edge)
    chart = chart or free[-1]
    if chart not in free:
        raise DegenliftError(f"{chart} is not a coordinate along the edge {edge.label()}")
    (u,) = [c for c in free if c != chart]
    vals = dict(zip(spec.coords, point))
    if vals[chart] == 0:
        raise DegenliftError(f"point {point} lies at infinity of the chart {chart}=1")
    return SingularPoint(edge.with_chart(chart), chart, u, vals[u] / vals[chart], point)


def is_ordinary_singularity(spec, p):
    """Simple zero of the edge restriction away from the torus-fixed ends."""
    vals = dict(zip(spec.coords, p.homogeneous_point))
    free = spec.free_coords(p.host)
    if any(vals[c] == 0 for c in free):
        return False
    b = restrict_to_stratum(spec, p.host.with_chart(p.chart))
    if not b.subs({p.u_coord: p.coordinate}).is_zero:
        return False
    if p.u_coord not in b.variables:
        return False
    return not b.partial(p.u_coord).subs({p.u_coord: p.coordinate}).is_zero
