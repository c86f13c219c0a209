"""Lines in the components of the central fiber and the pre-log incidence condition.

A line in P^n is stored through its linear equations, reduced to a canonical
form (reduced row echelon, each row a primitive integer vector whose first
nonzero entry is positive), so two presentations of the same line compare
equal.  Collinearity of points is a rank test on their coordinate matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm

from .errors import DegenliftError, IncompleteLocus, LineMissesPoint
from .family import normalize_point, restrict_to_stratum, singular_points_on_edge

__all__ = [
    "Line",
    "IncidenceProfile",
    "line_through",
    "contains",
    "collinear",
    "hyperplane_intersection",
    "prelog_lines_K3",
    "prelog_lines_cubic",
    "incidence_profile",
    "classify_quintic_line",
    "rational_rank",
]


def _rref(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                m = rows[i][c]
                rows[i] = [a - m * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


def rational_rank(rows):
    """Rank of a matrix of rationals (exact)."""
    return len(_rref(rows)) if rows else 0


def _kernel(rows, ncols):
    red = _rref(rows)
    pivots = [next(j for j, x in enumerate(r) if x) for r in red]
    basis = []
    for free in (j for j in range(ncols) if j not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[free]
        basis.append(v)
    return basis


def _primitive(row):
    den = lcm(*(x.denominator for x in row))
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return tuple(-x for x in ints) if lead < 0 else tuple(ints)


@dataclass(frozen=True)
class Line:
    coords: tuple
    equations: tuple  # canonical integer rows, one per linear form vanishing on the line
    points: tuple = field(compare=False)  # two spanning points (normalized)
    component: object = field(default=None, compare=False)

    def __str__(self):
        return ", ".join(_form_str(eq, self.coords) + " = 0" for eq in self.equations)

    def point_at(self, mu, nu=1):
        """The point mu*p + nu*q for the stored spanning points p, q."""
        p, q = self.points
        return tuple(Fraction(mu) * a + Fraction(nu) * b for a, b in zip(p, q))

    def meets(self, point):
        return contains(self, point)


def _form_str(eq, coords):
    parts = []
    for c, v in zip(eq, coords):
        if not c:
            continue
        mag = abs(c)
        term = v if mag == 1 else f"{mag}*{v}"
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


def line_through(p, q, coords=None, component=None):
    """The line through two distinct projective points."""
    p, q = normalize_point(p), normalize_point(q)
    if len(p) != len(q):
        raise ValueError("points live in different projective spaces")
    if rational_rank([p, q]) < 2:
        raise ValueError("a line needs two distinct points")
    coords = tuple(coords) if coords else tuple(f"z{i}" for i in range(len(p)))
    forms = _kernel([p, q], len(p))
    eqs = tuple(_primitive(r) for r in _rref(forms))
    return Line(coords, eqs, (p, q), component)


def contains(line, point):
    return all(sum(Fraction(c) * x for c, x in zip(eq, point)) == 0 for eq in line.equations)


def collinear(points):
    return rational_rank([list(p) for p in points]) < 3


def hyperplane_intersection(line, form):
    """Point where the line meets {form = 0}, or None if the line lies inside it."""
    p, q = line.points
    vp = sum(Fraction(c) * x for c, x in zip(form, p))
    vq = sum(Fraction(c) * x for c, x in zip(form, q))
    if vp == 0 and vq == 0:
        return None
    return normalize_point(tuple(vq * a - vp * b for a, b in zip(p, q)))


def _coord_form(coords, name):
    return tuple(1 if c == name else 0 for c in coords)


def _is_torus_fixed_in(point, plane_coords, coords):
    vals = dict(zip(coords, point))
    return sum(1 for c in plane_coords if vals[c] != 0) <= 1


def _edge_points(spec, component, allow_incomplete):
    groups = []
    for edge in spec.edges_of(component):
        locus = singular_points_on_edge(spec, edge)
        if locus.unresolved and not allow_incomplete:
            raise IncompleteLocus(
                f"{locus.unresolved} singular point(s) on {edge.label()} are not rational"
            )
        groups.append((edge, locus.points))
    return groups


def _canonical_sort(lines):
    return sorted(set(lines), key=lambda ln: ln.equations)


def _transverse(line, spec, component):
    plane = spec.free_coords(component)
    for c in plane:
        vals = [1 if x == c else 0 for x in spec.coords]
        if contains(line, vals):
            return False
    return True


def prelog_lines_K3(spec, component, allow_incomplete=False):
    """Lines in a plane component through one singular point on each of its three edges.

    With ``allow_incomplete`` the search runs over the rational singular points
    only, instead of raising when some are irrational.
    """
    if spec.n != 3 or spec.d != 4:
        raise DegenliftError("prelog_lines_K3 needs a quartic degeneration in P^3")
    groups = _edge_points(spec, component, allow_incomplete)
    found = []
    for triple in product(*(pts for _, pts in groups)):
        hp = [t.homogeneous_point for t in triple]
        if not collinear(hp):
            continue
        line = line_through(hp[0], hp[1], spec.coords, component)
        if _transverse(line, spec, component):
            found.append(line)
    return _canonical_sort(found)


def prelog_lines_cubic(spec, component, allow_incomplete=False):
    """Lines in a plane component through one singular point on each of its two gluing edges."""
    if spec.n != 3 or spec.d != 3:
        raise DegenliftError("prelog_lines_cubic needs a cubic degeneration in P^3")
    groups = _edge_points(spec, component, allow_incomplete)
    if len(groups) != 2:
        raise DegenliftError("a plane component of xyz + t*f has two gluing edges")
    found = []
    for p, q in product(groups[0][1], groups[1][1]):
        line = line_through(p.homogeneous_point, q.homogeneous_point, spec.coords, component)
        if _transverse(line, spec, component):
            found.append(line)
    return _canonical_sort(found)


@dataclass
class IncidenceProfile:
    component: object
    entries: list  # (divisor label, point or None, flag)
    strata_met: list = field(default_factory=list)
    tag: str = ""


def _flag_on_edge(spec, edge, point):
    vals = dict(zip(spec.coords, point))
    free = spec.free_coords(edge)
    if sum(1 for c in free if vals[c] != 0) <= 1:
        return "deeper stratum"
    r = restrict_to_stratum(spec, edge)
    if r.subs({c: vals[c] for c in free}).is_zero:
        return "in S"
    return "not in S"


def incidence_profile(line, spec, component):
    """Where the line meets each toric divisor of a plane component, with (*) verdict."""
    if not _all_zero(line, component.zero_coords, spec.coords):
        raise LineMissesPoint("line does not lie in the component")
    entries = []
    for edge in spec.edges_of(component):
        (extra,) = [c for c in edge.zero_coords if c not in component.zero_coords]
        pt = hyperplane_intersection(line, _coord_form(spec.coords, extra))
        flag = "contained" if pt is None else _flag_on_edge(spec, edge, pt)
        entries.append((edge.label(), pt, flag))
    ok = all(flag == "in S" for _, _, flag in entries)
    return IncidenceProfile(component, entries, [], "prelog-ok" if ok else "prelog-fail")


def _all_zero(line, names, coords):
    return all(
        all(pt[coords.index(c)] == 0 for pt in line.points) for c in names
    )


def classify_quintic_line(line, spec):
    """Class (1), (2)-I or (2)-II of a line in a P^3 component of the quintic central fiber."""
    if spec.n != 4 or spec.d != 5:
        raise DegenliftError("classification applies to the quintic degeneration in P^4")
    names = spec.require_coordinate_factors()
    zero = [i for i, c in enumerate(names) if _all_zero(line, [c], spec.coords)]
    if len(zero) != 1:
        raise DegenliftError("line must lie in exactly one component")
    component = spec.component(zero[0])
    others = [c for c in spec.coords if c not in component.zero_coords]
    p, q = line.points
    idx = {c: spec.coords.index(c) for c in others}
    met = []
    for c1, c2 in combinations(others, 2):
        i, j = idx[c1], idx[c2]
        if p[i] * q[j] - p[j] * q[i] == 0:
            met.append(spec.stratum([zero[0], names.index(c1), names.index(c2)]).label())
    entries = []
    for c in others:
        pt = hyperplane_intersection(line, _coord_form(spec.coords, c))
        entries.append(("{" + f"{component.zero_coords[0]}=0,{c}=0" + "}", pt, "contained" if pt is None else "meets"))
    tag = "class1" if not met else ("class2II" if len(met) == 1 else "class2I")
    return IncidenceProfile(component, entries, met, tag)
