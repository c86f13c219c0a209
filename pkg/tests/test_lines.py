from itertools import combinations, product

import pytest
import sympy

from degenlift.errors import IncompleteLocus
from degenlift.exactalg import P, Poly
from degenlift.family import FamilySpec, restrict_to_stratum, singular_points_on_edge
from degenlift.fixtures import (
    cubic_corner_fixture,
    cubic_fixture,
    edge_rational_roots,
    k3_fixture,
    quintic_family,
    worked_example,
)
from degenlift.lines import (
    classify_quintic_line,
    collinear,
    contains,
    incidence_profile,
    line_through,
    prelog_lines_cubic,
    prelog_lines_K3,
)

XYZW = ("x", "y", "z", "w")


def sympy_lines(spec, component):
    """Independent oracle: sympy roots on each edge, sympy matrix rank over all triples."""
    groups = []
    for edge in spec.edges_of(component):
        free = spec.free_coords(edge)
        u, h = free
        pts = []
        for r in edge_rational_roots(spec, edge.zero_coords, u, h):
            vals = {c: 0 for c in spec.coords}
            vals[u], vals[h] = r, 1
            pts.append([vals[c] for c in spec.coords])
        groups.append(pts)
    found = set()
    for triple in product(*groups):
        m = sympy.Matrix(triple)
        if m.rank() < 3:
            forms = sympy.Matrix.hstack(*m.nullspace()).T
            found.add(canonical(forms))
    return found


def canonical(forms):
    rref, _ = sympy.Matrix(forms).rref()
    return tuple(tuple(row) for row in rref.tolist() if any(row))


def package_lines(lines):
    return {canonical([list(eq) for eq in ln.equations]) for ln in lines}


def test_worked_example_line_equations():
    line = line_through((1, 0, 0, 1), (0, 0, -1, 1), XYZW)
    assert str(line) == "x - z - w = 0, y = 0"


def test_line_through_coordinate_points_is_an_edge():
    line = line_through((1, 0, 0, 0), (0, 1, 0, 0), XYZW)
    assert str(line) == "z = 0, w = 0"


def test_third_point_is_collinear():
    line = line_through((1, 0, 0, 1), (0, 0, -1, 1), XYZW)
    assert contains(line, (1, 0, 1, 0))
    assert collinear([(1, 0, 0, 1), (0, 0, -1, 1), (1, 0, 1, 0)])


def test_equal_points_rejected():
    with pytest.raises(ValueError):
        line_through((1, 0, 0, 1), (2, 0, 0, 2), XYZW)


def test_worked_example_component_contains_the_line():
    spec = worked_example()
    lines = prelog_lines_K3(spec, spec.component(1), allow_incomplete=True)
    assert line_through((1, 0, 0, 1), (0, 0, -1, 1), XYZW) in lines


def test_worked_example_search_needs_permission_when_incomplete():
    spec = worked_example()
    with pytest.raises(IncompleteLocus):
        prelog_lines_K3(spec, spec.component(1))


@pytest.mark.parametrize("seed", range(4))
def test_generic_fixture_has_no_lines(seed):
    spec = k3_fixture(seed, lines=0)
    for comp in spec.components():
        assert prelog_lines_K3(spec, comp) == []
        assert sympy_lines(spec, comp) == set()


@pytest.mark.parametrize("seed", range(4))
def test_two_triple_fixture_has_exactly_two_lines(seed):
    spec = k3_fixture(seed, lines=2, normal="z")
    comp = spec.component(2)
    lines = prelog_lines_K3(spec, comp)
    assert len(lines) == 2
    assert package_lines(lines) == sympy_lines(spec, comp)


@pytest.mark.parametrize("seed", range(3))
def test_returned_lines_meet_each_divisor_in_the_singular_locus(seed):
    spec = k3_fixture(seed, lines=2, normal="y")
    comp = spec.component(1)
    for line in prelog_lines_K3(spec, comp):
        for edge in spec.edges_of(comp):
            (extra,) = [c for c in edge.zero_coords if c != "y"]
            i = spec.coords.index(extra)
            p, q = line.points
            pt = tuple(q[i] * a - p[i] * b for a, b in zip(p, q))
            vals = dict(zip(spec.coords, pt))
            assert restrict_to_stratum(spec, edge.with_chart(None)).evaluate(
                {c: vals[c] for c in spec.free_coords(edge)}
            ) == 0
        assert incidence_profile(line, spec, comp).tag == "prelog-ok"


def test_edge_roles_can_be_permuted():
    spec = k3_fixture(5, lines=2, normal="y")
    comp = spec.component(1)
    base = {ln.equations for ln in prelog_lines_K3(spec, comp)}
    # relabel the plane coordinates x -> z -> w -> x and map the answer back
    perm = {"x": "z", "z": "w", "w": "x", "y": "y"}
    f = spec.f.subs({c: Poly.var(perm[c] + "_") for c in XYZW}).subs({c + "_": Poly.var(c) for c in XYZW})
    moved = FamilySpec(3, XYZW, [Poly.var(c) for c in XYZW], f)
    back = set()
    for ln in prelog_lines_K3(moved, moved.component(1)):
        pts = [tuple(dict(zip(XYZW, p))[perm[c]] for c in XYZW) for p in ln.points]
        back.add(line_through(pts[0], pts[1], XYZW).equations)
    assert back == base


def test_incidence_profile_flags_a_failing_line():
    spec = worked_example()
    line = line_through((1, 0, 0, 1), (0, 0, 1, 1), XYZW)
    prof = incidence_profile(line, spec, spec.component(1))
    assert prof.tag == "prelog-fail"
    assert "not in S" in [flag for _, _, flag in prof.entries]


@pytest.mark.parametrize("seed", range(3))
def test_cubic_fixture_has_nine_lines_per_component(seed):
    spec = cubic_fixture(seed)
    total = 0
    for comp in spec.components():
        lines = prelog_lines_cubic(spec, comp)
        pts = [singular_points_on_edge(spec, e).points for e in spec.edges_of(comp)]
        assert [len(p) for p in pts] == [3, 3]
        assert len(lines) == 9
        total += len(lines)
    assert total == 27


def test_cubic_corner_fixture_drops_lines_through_fixed_point():
    spec = cubic_corner_fixture(0)
    counts = {comp.label(): len(prelog_lines_cubic(spec, comp)) for comp in spec.components()}
    assert counts == {"{x=0}": 6, "{y=0}": 6, "{z=0}": 9}
    for comp in spec.components():
        for line in prelog_lines_cubic(spec, comp):
            assert not contains(line, (0, 0, 0, 1))


def test_cubic_never_exceeds_nine():
    for seed in range(3):
        spec = cubic_fixture(seed)
        for comp in spec.components():
            assert len(prelog_lines_cubic(spec, comp)) <= 9


def test_cubic_with_unresolved_roots_raises():
    spec = FamilySpec(3, XYZW, [Poly.var(c) for c in ("x", "y", "z")], P("x^3 + x*w^2 + w^3 + y^3 + z^3"))
    with pytest.raises(IncompleteLocus):
        prelog_lines_cubic(spec, spec.component(1))


def quintic_line(p, q):
    return line_through(p, q, tuple(f"z{i}" for i in range(5)))


def test_quintic_class_two_one():
    spec = quintic_family(0)
    # in {z0=0}: meets {z1=z2=0} at (0,0,0,1,1) and {z3=z4=0} at (0,1,1,0,0), two disjoint strata
    prof = classify_quintic_line(quintic_line((0, 0, 0, 1, 1), (0, 1, 1, 0, 0)), spec)
    assert prof.tag == "class2I" and len(prof.strata_met) == 2


def test_quintic_class_two_two():
    spec = quintic_family(0)
    prof = classify_quintic_line(quintic_line((0, 0, 0, 1, 1), (0, 1, 2, 3, 5)), spec)
    assert prof.tag == "class2II" and len(prof.strata_met) == 1


def test_quintic_class_one():
    spec = quintic_family(0)
    prof = classify_quintic_line(quintic_line((0, 0, 1, 2, 3), (0, 1, 0, 5, 7)), spec)
    assert prof.tag == "class1"
    assert all(pt is not None and sum(1 for v in pt if v) == 3 for _, pt, _ in prof.entries)


def test_quintic_strata_pairs_match_minors():
    """A line in {z0=0} meets the codim-2 stratum {z_i=z_j=0} iff the (i,j) minor vanishes."""
    spec = quintic_family(0)
    p, q = (0, 0, 1, 2, 3), (0, 1, 0, 4, 6)
    prof = classify_quintic_line(quintic_line(p, q), spec)
    expected = [(i, j) for i, j in combinations(range(1, 5), 2) if p[i] * q[j] - p[j] * q[i] == 0]
    assert len(prof.strata_met) == len(expected)
