"""Integer bookkeeping for logarithmic normal sheaves of lines and disks.

Everything here is degree arithmetic: line bundles on P^1 are O(k), bundles on
a two-component nodal rational curve are pairs of degrees glued at one node,
and a fan edge configuration in a rank-two lattice gives the dual obstruction
covectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "SheafProfile",
    "DualObstructionBasis",
    "log_normal_degree",
    "cohomology_P1",
    "nodal_cohomology",
    "profile_cohomology",
    "dual_obstruction_basis",
    "disk_profile",
]


@dataclass(frozen=True)
class SheafProfile:
    carrier: str  # "P1" or "nodal"
    summands: tuple  # ints for P1, (d1, d2) pairs for nodal

    def __post_init__(self):
        if self.carrier not in ("P1", "nodal"):
            raise ValueError("carrier is 'P1' or 'nodal'")
        summands = tuple(tuple(s) if self.carrier == "nodal" else int(s) for s in self.summands)
        if self.carrier == "nodal" and any(len(s) != 2 for s in summands):
            raise ValueError("each nodal summand has one degree per component")
        object.__setattr__(self, "summands", summands)

    @property
    def rank(self):
        return len(self.summands)


def log_normal_degree(usual_degree, singular_hits):
    """Degree of the log normal bundle: one twist down per singular intersection."""
    if singular_hits < 0:
        raise ValueError("singular_hits must be non-negative")
    return usual_degree - singular_hits


def cohomology_P1(k):
    """(h0, h1) of O(k) on P^1."""
    return max(k + 1, 0), max(-k - 1, 0)


def nodal_cohomology(profile):
    """(h0, h1) of a line bundle (or sum) on C1 u C2 glued at one node.

    A section is a pair of sections agreeing at the node.  The evaluation map
    H0(L1) + H0(L2) -> fiber at the node has rank 1 as soon as either side has
    sections, because O(k) with k >= 0 has a section not vanishing at a point.
    """
    if isinstance(profile, SheafProfile):
        if profile.carrier != "nodal":
            raise ValueError("nodal_cohomology needs a nodal profile")
        pairs = profile.summands
    else:
        pairs = [tuple(profile)]
    h0 = h1 = 0
    for d1, d2 in pairs:
        n1, n2 = cohomology_P1(d1)[0], cohomology_P1(d2)[0]
        ev = 1 if (n1 or n2) else 0
        s0 = n1 + n2 - ev
        h0 += s0
        h1 += s0 - (d1 + d2 + 1)
    return h0, h1


def profile_cohomology(profile):
    if profile.carrier == "nodal":
        return nodal_cohomology(profile)
    h = [cohomology_P1(k) for k in profile.summands]
    return sum(a for a, _ in h), sum(b for _, b in h)


@dataclass(frozen=True)
class DualObstructionBasis:
    edges: tuple
    covectors: tuple
    kernel: tuple


def _primitive_vec(v):
    g = gcd(*v)
    return tuple(x // g for x in v) if g else tuple(v)


def dual_obstruction_basis(edges):
    """Covectors annihilating three balanced primitive edge directions, and their relation.

    Each covector is the edge direction rotated by a quarter turn, v(x, y) =
    (-y, x); this sign table sends the standard fan (1,0), (0,1), (-1,-1) to
    (0,1), (-1,0), (1,-1) with kernel weighting (1,1,1).
    """
    edges = tuple(tuple(int(c) for c in e) for e in edges)
    if len(edges) != 3 or any(len(e) != 2 for e in edges):
        raise ValueError("need three vectors in a rank-two lattice")
    for e in edges:
        if e == (0, 0) or gcd(*e) != 1:
            raise ValueError(f"edge direction {e} is not primitive")
    if tuple(sum(c) for c in zip(*edges)) != (0, 0):
        raise ValueError("edge directions are not balanced (they do not sum to zero)")
    covectors = tuple(_primitive_vec((-y, x)) for x, y in edges)
    # weights (a, b, c) with a v1 + b v2 + c v3 = 0: a 2x3 system with a 1-dim kernel
    (p1, q1), (p2, q2), (p3, q3) = covectors
    k = (p2 * q3 - p3 * q2, p3 * q1 - p1 * q3, p1 * q2 - p2 * q1)
    lead = next(x for x in k if x)
    kernel = tuple(Fraction(x, lead) for x in k)
    return DualObstructionBasis(edges, covectors, kernel)


def disk_profile(n):
    """Doubled normal profile of a holomorphic disk and the dimension of its family."""
    if n < 3:
        raise ValueError("disk profiles start at n = 3")
    if n == 3:
        summands = (-1,)
    else:
        summands = (-1, -1) + (0,) * (n - 4)
    profile = SheafProfile("P1", summands)
    if n == 3:
        dim = 0
    else:
        dim = (n - 4) + (n - 2)
    return profile, dim
