"""Constructed test families with prescribed rational singular points.

On an edge with free coordinates (u, h) the restriction of f is the binary form
built from the monomials u^i h^(d-i).  Its two pure powers are shared with the
other edges through u and h, so they are fixed first; the remaining roots are
prescribed and the last root follows from the product of the roots.  Monomials
involving at least three coordinates vanish on every edge and are free: they
carry random coefficients and the symbolic parameters.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

from .exactalg import Poly
from .family import FamilySpec, normalize_point
from .lines import collinear, line_through

__all__ = [
    "worked_example",
    "k3_fixture",
    "cubic_fixture",
    "cubic_corner_fixture",
    "model_family",
    "trivial_family",
    "quintic_family",
    "brute_force_k3_lines",
    "edge_rational_roots",
    "random_rational",
]

K3_COORDS = ("x", "y", "z", "w")


def worked_example():
    """The quartic family with parameters a, b used throughout the acceptance suite."""
    from .familyfile import load_shipped

    return load_shipped("quartic_k3_example")


def random_rational(rng, bound=5, dens=(1, 2, 3), nonzero=True):
    while True:
        r = Fraction(rng.randint(-bound, bound), rng.choice(dens))
        if r or not nonzero:
            return r


def _monomials(coords, d):
    for combo in combinations_with_replacement(coords, d):
        powers = {}
        for c in combo:
            powers[c] = powers.get(c, 0) + 1
        yield powers


def _edge_form(u, h, lead, roots):
    """lead * prod(u - r*h) as a Poly."""
    p = Poly.const(lead)
    for r in roots:
        p = p * (Poly.var(u) - Poly.var(h) * r)
    return p


def _edges(coords, factors, n):
    """(zero coordinates, u, h) for every edge, h the last free coordinate."""
    out = []
    for zero in combinations(factors, n - 1):
        free = [c for c in coords if c not in zero]
        out.append((tuple(zero), free[0], free[1]))
    return out


def _crossings(coords, normal, lam):
    """Edge roots of the line sum(lam_c * c) = 0 in the plane {normal = 0}."""
    plane = [c for c in coords if c != normal]
    out = {}
    for X in plane:
        u, h = [c for c in plane if c != X]
        out[(tuple(sorted((normal, X), key=coords.index)), u, h)] = -lam[h] / lam[u]
    return out


def _assemble(coords, d, pure, forms, rng, params, free_terms):
    """f from the pure powers, the mixed part of each edge form, and free monomials."""
    f = Poly()
    for c in coords:
        f = f + Poly.monomial({c: d}, pure[c])
    for form in forms:
        for exps, c in form.terms.items():
            powers = {v: e for v, e in zip(form.variables, exps) if e}
            if len(powers) == 2:
                f = f + Poly.monomial(powers, c)
    mixed = [m for m in _monomials(coords, d) if len(m) >= 3]
    if free_terms:
        for m in mixed:
            if rng.random() < 0.7:
                f = f + Poly.monomial(m, random_rational(rng, 3))
    for name, m in zip(params, rng.sample(mixed, len(params))):
        f = f + Poly.monomial(m) * Poly.var(name)
    return f


def _to_sympy(p, u):
    from sympy import QQ
    from sympy import Poly as SymPoly
    from sympy import Symbol

    rep = {}
    for exps, c in p.terms.items():
        e = dict(zip(p.variables, exps)).get(u, 0)
        rep[(e,)] = QQ(c.numerator, c.denominator)
    return SymPoly.from_dict(rep, Symbol(u), domain=QQ)


def edge_rational_roots(spec, zero, u, h):
    """Nonzero rational roots in u (h = 1) of f on an edge, found by sympy factorization."""
    r = spec.f.subs({c: 0 for c in zero}).subs({h: 1})
    if r.is_zero:
        return []
    if not set(r.occurring()) <= {u}:
        raise ValueError("edge restriction depends on parameters")
    roots = _to_sympy(r, u).ground_roots()
    out = []
    for root in roots:
        q = Fraction(int(root.p), int(root.q))
        if q:
            out.append(q)
    return sorted(out)


def brute_force_k3_lines(spec):
    """Number of collinear triples of singular points per plane component.

    Roots come from sympy factorization and lines from a direct rank test over
    all triples, independently of the enumeration code.
    """
    points = {}
    for zero, u, h in _edges(spec.coords, spec.coords, spec.n):
        found = []
        for cand in edge_rational_roots(spec, zero, u, h):
            vals = {c: Fraction(0) for c in spec.coords}
            vals[u], vals[h] = cand, Fraction(1)
            found.append(normalize_point(tuple(vals[c] for c in spec.coords)))
        points[zero] = found
    counts = {}
    for normal in spec.coords:
        edges = [z for z in points if normal in z]
        lines = set()
        for triple in product(*(points[z] for z in edges)):
            if collinear(triple):
                lines.add(line_through(triple[0], triple[1], spec.coords).equations)
        counts[normal] = len(lines)
    return counts


def _distinct_roots(rng, taken, count, bound=19):
    out = list(taken)
    while len(out) < count:
        r = random_rational(rng, bound, dens=(1, 2, 3, 5, 7))
        if r not in out:
            out.append(r)
    return out


def k3_fixture(seed, lines=0, normal="y", params=(), free_terms=True, check=True):
    """Random quartic fixture whose component {normal = 0} carries ``lines`` pre-log lines.

    Every edge restriction has four distinct nonzero rational roots.  Each
    prescribed line contributes one root on each edge of the component.  The
    fixture is resampled until a brute-force search finds exactly the intended
    lines (and none on other components).
    """
    rng = random.Random(seed)
    coords = K3_COORDS
    while True:
        pure = {c: random_rational(rng, 3) for c in coords}
        prescribed = {e: [] for e in _edges(coords, coords, 3)}
        for _ in range(lines):
            lam = {c: random_rational(rng, 9, dens=(1, 2, 3, 5)) for c in coords if c != normal}
            for e, r in _crossings(coords, normal, lam).items():
                prescribed[e].append(r)
        roots = {}
        ok = True
        for (zero, u, h), given in prescribed.items():
            if len(set(given)) != len(given):
                ok = False
                break
            rs = _distinct_roots(rng, given, 3)
            prod = rs[0] * rs[1] * rs[2]
            last = pure[h] / (pure[u] * prod)
            if last in rs:
                ok = False
                break
            roots[(zero, u, h)] = rs + [last]
        if not ok:
            continue
        forms = [_edge_form(u, h, pure[u], rs) for (_, u, h), rs in roots.items()]
        f = _assemble(coords, 4, pure, forms, rng, params, free_terms)
        spec = FamilySpec(3, coords, [Poly.var(c) for c in coords], f, tuple(params),
                          name=f"k3_fixture_{seed}_{lines}")
        if check:
            counts = brute_force_k3_lines(spec)
            want = {c: (lines if c == normal else 0) for c in coords}
            if counts != want:
                continue
        return spec


def cubic_fixture(seed, params=(), free_terms=True):
    """Random cubic fixture: three distinct nonzero rational roots on every edge."""
    rng = random.Random(seed)
    coords, factors = K3_COORDS, ("x", "y", "z")
    while True:
        pure = {c: random_rational(rng, 3) for c in coords}
        roots = {}
        ok = True
        for zero, u, h in _edges(coords, factors, 3):
            rs = _distinct_roots(rng, [], 2)
            last = -pure[h] / (pure[u] * rs[0] * rs[1])
            if last in rs:
                ok = False
                break
            roots[(zero, u, h)] = rs + [last]
        if ok:
            forms = [_edge_form(u, h, pure[u], rs) for (_, u, h), rs in roots.items()]
            f = _assemble(coords, 3, pure, forms, rng, params, free_terms)
            return FamilySpec(3, coords, [Poly.var(c) for c in factors], f, tuple(params),
                              name=f"cubic_fixture_{seed}")


def cubic_corner_fixture(seed):
    """Cubic fixture whose edge {x=y=0} has one root at its bottom corner w=0.

    That root is a torus-fixed point, so the edge carries only two usable
    singular points and the components {x=0}, {y=0} get 2*3 = 6 lines each.
    """
    rng = random.Random(seed)
    coords, factors = K3_COORDS, ("x", "y", "z")
    special = (("x", "y"), "z", "w")
    while True:
        pure = {c: random_rational(rng, 3) for c in coords}
        pure["z"] = Fraction(0)
        forms = []
        for zero, u, h in _edges(coords, factors, 3):
            rs = _distinct_roots(rng, [], 2)
            if (zero, u, h) == special:
                lead = pure[h] / (rs[0] * rs[1])
                forms.append(Poly.var(h) * _edge_form(u, h, lead, rs))
                continue
            last = -pure[h] / (pure[u] * rs[0] * rs[1])
            if last in rs:
                break
            forms.append(_edge_form(u, h, pure[u], rs + [last]))
        else:
            f = _assemble(coords, 3, pure, forms, rng, (), True)
            return FamilySpec(3, coords, [Poly.var(c) for c in factors], f, name=f"cubic_corner_{seed}")


def model_family(seed=0):
    """Quartic family with f independent of y and one pre-log line in {y = 0}.

    Along {y = 0} every local frame has f3 = 0, so all residues vanish.
    """
    spec = k3_fixture(seed, lines=1, normal="y", check=False)
    f = spec.f.subs({"y": 0})
    return FamilySpec(3, K3_COORDS, spec.factors, f, name=f"model_family_{seed}")


def trivial_family(seed=0):
    """f = y*g: f vanishes on the plane {y = 0}, so its lines persist unchanged."""
    rng = random.Random(seed)
    g = Poly()
    for m in _monomials(K3_COORDS, 3):
        g = g + Poly.monomial(m, random_rational(rng, 3, nonzero=False))
    return FamilySpec(3, K3_COORDS, [Poly.var(c) for c in K3_COORDS], Poly.var("y") * g,
                      name=f"trivial_family_{seed}")


def quintic_family(seed=0):
    coords = tuple(f"z{i}" for i in range(5))
    rng = random.Random(seed)
    f = Poly()
    for c in coords:
        f = f + Poly.monomial({c: 5}, random_rational(rng, 3))
    for m in rng.sample(list(_monomials(coords, 5)), 12):
        f = f + Poly.monomial(m, random_rational(rng, 3))
    return FamilySpec(4, coords, [Poly.var(c) for c in coords], f, name=f"quintic_{seed}")
