"""Line counts on the degenerations, derived from their combinatorial factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, prod

from .lines import prelog_lines_K3

__all__ = [
    "CensusReport",
    "grassmannian_degree",
    "quintic_census",
    "cubic_census",
    "k3_prelog_census",
]


@dataclass
class CensusReport:
    scenario: str
    entries: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.entries[key]


def grassmannian_degree(k, n):
    """Degree of the Grassmannian G(k, n) of k-planes in C^n in its Pluecker embedding."""
    dim = k * (n - k)
    num = 1
    for i in range(1, k + 1):
        num *= prod(range(1, i))  # (i-1)!
    den = 1
    for i in range(1, k + 1):
        den *= prod(range(1, n - k + i))  # (n-k+i-1)!
    # degree = dim! * prod (i-1)! / prod (n-k+i-1)!
    return prod(range(1, dim + 1)) * num // den


def _disjoint_pairs(lines):
    return sum(1 for a, b in combinations(lines, 2) if not set(a) & set(b))


def quintic_census(degree=5, component_dim=3):
    """Counts for lines in z0*...*z4 + t*f = 0.

    In one P^3 component a line meets the four coordinate planes; requiring each
    intersection to lie on the degree-5 curve cut out there is four conditions of
    degree 5 on G(2,4).  Class (2) lines meet one of the six codimension-two
    strata at one of its 5 singular points; a line through two disjoint strata
    is counted twice.
    """
    d = degree
    planes = component_dim + 1  # coordinate planes of the component
    g_deg = grassmannian_degree(2, component_dim + 1)
    incidence_total = g_deg * d**planes
    strata = list(combinations(range(planes), 2))  # codim-2 strata (lines) of the component
    points_per_stratum = d
    strata_points = len(strata) * points_per_stratum
    lines_through_point = d * d  # remaining two conditions, one per plane not through the stratum
    class2_raw = lines_through_point * strata_points
    disjoint = _disjoint_pairs(strata)
    class2I = d * d * disjoint
    class2 = class2_raw - class2I
    class1 = incidence_total - class2
    components = d
    total = class1 * components
    entries = {
        "grassmannian_degree": g_deg,
        "incidence_total": incidence_total,
        "strata": len(strata),
        "points_per_stratum": points_per_stratum,
        "strata_points": strata_points,
        "class2_raw": class2_raw,
        "disjoint_pairs": disjoint,
        "class2I": class2I,
        "class2": class2,
        "class1": class1,
        "components": components,
        "total_3fold": total,
    }
    return CensusReport("quintic", entries)


def cubic_census(mode="toric_planes"):
    if mode == "toric_planes":
        edges_per_component = 2
        points_per_edge = 3
        per_component = points_per_edge**edges_per_component
        components = 3
        return CensusReport(
            "cubic_toric",
            {
                "points_per_edge": points_per_edge,
                "per_component": per_component,
                "components": components,
                "total": per_component * components,
            },
        )
    if mode == "plane_quadric":
        conic_points = 2 * 3  # plane meets the quadric in a conic carrying 6 singular points
        plane = comb(conic_points, 2)
        rulings = 2
        quadric = conic_points * rulings
        return CensusReport(
            "cubic_plane_quadric",
            {"conic_points": conic_points, "plane": plane, "rulings": rulings,
             "quadric": quadric, "total": plane + quadric},
        )
    raise ValueError("mode is 'toric_planes' or 'plane_quadric'")


def k3_prelog_census(spec, allow_incomplete=False):
    entries = {}
    details = {}
    total = 0
    for comp in spec.components():
        lines = prelog_lines_K3(spec, comp, allow_incomplete)
        entries[comp.label()] = len(lines)
        details[comp.label()] = [str(ln) for ln in lines]
        total += len(lines)
    entries["total"] = total
    return CensusReport("k3_prelog", entries, details)
