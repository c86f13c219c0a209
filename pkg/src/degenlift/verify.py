"""End-to-end check of the quartic example family against its known values."""

from __future__ import annotations

import random
from fractions import Fraction

from .exactalg import P, RatFunc
from .family import singular_point_at, singular_points_on_edge
from .familyfile import load_shipped
from .kuranishi import first_order_residue, kuranishi_first_order, local_frame
from .lifter import lift_solve
from .lines import line_through, prelog_lines_K3

__all__ = ["verify_example", "EXPECTED", "example_specializations"]

EXPECTED = {
    "points": [(1, 0, 0, 1), (0, 0, -1, 1), (1, 0, 1, 0)],
    "residues": ["(a+b+2)/(4+a)", "(a+b-2)/2", "0"],
    "condition": "a^2 + a*b + 4*a + 6*b - 4",
    "c1": "-4",
    "d1": "2 - a - b",
    "a1": "0",
}


def _ratfunc(text):
    if "/" in text and "(" in text:
        num, den = text.rsplit("/", 1)
        return RatFunc(P(num), P(den))
    return RatFunc.from_poly(P(text))


def example_specializations(seed, samples):
    """Rational (a, b): half on the curve a^2+ab+4a+6b-4 = 0, half off it.

    a = -4 (a pole of the first residue) and a = -6 are avoided.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        a = Fraction(rng.randint(-12, 12), rng.randint(1, 5))
        if a in (-4, -6):
            continue
        if len(out) % 2 == 0:
            b = (4 - 4 * a - a * a) / (a + 6)
        else:
            b = Fraction(rng.randint(-12, 12), rng.randint(1, 5))
            if a * a + a * b + 4 * a + 6 * b - 4 == 0:
                continue
        out.append((a, b))
    return out


def verify_example(seed=0, samples=20):
    spec = load_shipped("quartic_k3_example")
    checks = []

    def check(name, ok, detail=""):
        checks.append((name, bool(ok), detail))

    found = {}
    for edge in spec.edges():
        for p in singular_points_on_edge(spec, edge).points:
            found[p.homogeneous_point] = p
    for pt in EXPECTED["points"]:
        check(f"singular_point{pt}", tuple(Fraction(x) for x in pt) in found)

    line = line_through(EXPECTED["points"][0], EXPECTED["points"][1], spec.coords)
    comp = spec.component(1)
    lines = prelog_lines_K3(spec, comp, allow_incomplete=True)
    check("prelog_line", line in lines, str(line))
    line = lines[lines.index(line)] if line in lines else line

    total = RatFunc.from_poly(P("0"))
    for pt, want in zip(EXPECTED["points"], EXPECTED["residues"]):
        b = first_order_residue(local_frame(spec, line, singular_point_at(spec, pt))).b
        total = total + b
        check(f"residue{pt}", b == _ratfunc(want), str(b))
    kv = kuranishi_first_order(spec, line)
    check("kuranishi_value", kv.value == total, str(kv.value))
    check("vanishing_condition", kv.vanishing_condition == P(EXPECTED["condition"]), str(kv.vanishing_condition))

    res = lift_solve(spec, line, 2)
    check("lift_c1", res.values.get("c1") == _ratfunc(EXPECTED["c1"]), str(res.values.get("c1")))
    check("lift_d1", res.values.get("d1") == _ratfunc(EXPECTED["d1"]), str(res.values.get("d1")))
    check("lift_a1", res.values.get("a1") == _ratfunc(EXPECTED["a1"]), str(res.values.get("a1")))
    check("lift_ideal", res.ideal == [P(EXPECTED["condition"])], ", ".join(map(str, res.ideal)))

    disagreements = 0
    for a, b in example_specializations(seed, samples):
        sp = spec.specialize({"a": a, "b": b})
        k0 = kuranishi_first_order(sp, line).value.is_zero
        l0 = lift_solve(sp, line, 2).solved
        disagreements += k0 != l0
    check("random_specializations", disagreements == 0, f"{samples} samples, {disagreements} disagreements")
    return checks
