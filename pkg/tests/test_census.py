from itertools import combinations

import pytest
import sympy

from degenlift.census import cubic_census, grassmannian_degree, k3_prelog_census, quintic_census
from degenlift.fixtures import brute_force_k3_lines, k3_fixture, worked_example


@pytest.mark.parametrize("n", range(4, 10))
def test_grassmannian_of_lines_has_catalan_degree(n):
    assert grassmannian_degree(2, n) == sympy.catalan(n - 2)


def test_grassmannian_g36():
    assert grassmannian_degree(3, 6) == 42


def test_quintic_class_one():
    assert quintic_census()["class1"] == 575


def test_quintic_class_two():
    c = quintic_census()
    assert c["class2"] == 675
    assert c["class2_raw"] - c["class2I"] == 750 - 75


def test_quintic_total():
    assert quintic_census()["total_3fold"] == 2875


def test_quintic_intermediate_counts():
    c = quintic_census()
    assert (c["incidence_total"], c["class2_raw"], c["class2I"]) == (1250, 750, 75)
    assert (c["strata"], c["points_per_stratum"], c["strata_points"], c["disjoint_pairs"]) == (6, 5, 30, 3)


def test_quintic_identities():
    c = quintic_census()
    assert c["class1"] + c["class2"] == c["incidence_total"]
    assert c["total_3fold"] == c["components"] * c["class1"]


def test_disjoint_strata_pairs_by_enumeration():
    strata = list(combinations(range(4), 2))
    pairs = [(a, b) for a, b in combinations(strata, 2) if not set(a) & set(b)]
    assert len(pairs) == quintic_census()["disjoint_pairs"]


def test_cubic_toric_planes():
    c = cubic_census("toric_planes")
    assert c["per_component"] == 9 and c["total"] == 27


def test_cubic_plane_quadric():
    c = cubic_census("plane_quadric")
    assert (c["plane"], c["quadric"], c["total"]) == (15, 12, 27)


def test_cubic_modes_agree():
    assert cubic_census("toric_planes")["total"] == cubic_census("plane_quadric")["total"]


def test_cubic_unknown_mode():
    with pytest.raises(ValueError):
        cubic_census("sphere")


def test_k3_census_on_worked_example():
    c = k3_prelog_census(worked_example(), allow_incomplete=True)
    assert c["{y=0}"] >= 1
    assert c["total"] == sum(v for k, v in c.entries.items() if k != "total")


@pytest.mark.parametrize("seed", range(3))
def test_k3_census_on_generic_fixture(seed):
    spec = k3_fixture(seed)
    assert k3_prelog_census(spec)["total"] == 0
    assert sum(brute_force_k3_lines(spec).values()) == 0


@pytest.mark.parametrize("seed", range(3))
def test_k3_census_on_two_triple_fixture(seed):
    spec = k3_fixture(seed, lines=2, normal="w")
    c = k3_prelog_census(spec)
    assert c["{w=0}"] == 2 and c["total"] == 2
    assert brute_force_k3_lines(spec)["w"] == 2
