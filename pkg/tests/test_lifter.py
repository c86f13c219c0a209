import random
from fractions import Fraction

import pytest

from degenlift.errors import AnsatzError
from degenlift.exactalg import P, Poly, RatFunc, Series, normalize_condition, poly_substitute
from degenlift.family import total_equation
from degenlift.fixtures import cubic_fixture, k3_fixture, model_family, random_rational, trivial_family, worked_example
from degenlift.lifter import lift_ansatz, lift_solve, model_case_check, obstruction_ideal, order_system
from degenlift.lines import line_through, prelog_lines_cubic, prelog_lines_K3

XYZW = ("x", "y", "z", "w")
CONDITION = P("a^2 + a*b + 4*a + 6*b - 4")


@pytest.fixture(scope="module")
def example():
    spec = worked_example()
    return spec, line_through((1, 0, 0, 1), (0, 0, -1, 1), XYZW, spec.component(1))


def resubstitute(spec, result, N):
    """Expand the total equation along the solved ansatz and return the series."""
    an = result.ansatz
    dv, orders = ("s", "t"), (spec.d + 2, N)
    s, t = Series.gen("s", dv, orders), Series.gen("t", dv, orders)
    c = lambda name: result.values.get(name, RatFunc.from_poly(Poly()))
    dep = s * an.slope + an.intercept
    normal = Series.const(0, dv, orders)
    tk = Series.const(1, dv, orders)
    for k in range(1, N + 1):
        tk = tk * t
        dep = dep + tk * (s * c(f"a{k}") + c(f"b{k}"))
        normal = normal + tk * (s * c(f"c{k}") + c(f"d{k}"))
    bind = {an.param: s, an.dep: dep, an.normal: normal, an.chart: Series.const(1, dv, orders)}
    return poly_substitute(total_equation(spec), bind)


def test_first_order_values(example):
    res = lift_solve(*example, 1)
    assert res.solved
    assert res.value("c1") == RatFunc.from_poly(P("-4"))
    assert res.value("d1") == RatFunc.from_poly(P("2 - a - b"))


def test_second_order_constraints(example):
    res = lift_solve(*example, 2)
    assert res.status == ("obstructed", 2)
    reduced = res.systems[1].reduced
    # with a1 = 0 the remaining constraints are 2 b1 + 2 - a - b and (a + 6) b1 + 4
    expected = {P("2*b1 + 2 - a - b"), P("(a + 6)*b1 + 4")}
    after = {normalize_condition(c.subs({"a1": 0})) for c in reduced} - {Poly()}
    assert after == {normalize_condition(e) for e in expected}
    assert P("a1") in reduced
    assert res.value("a1").is_zero


def test_second_order_ideal(example):
    assert obstruction_ideal(*example, 2) == [CONDITION]


def test_ideal_is_eliminant_of_constraints(example):
    """Eliminating b1 from the two order-2 constraints gives the condition."""
    b1 = RatFunc(P("a + b - 2"), P("2"))
    assert normalize_condition((RatFunc.from_poly(P("a + 6")) * b1 + 4).num) == CONDITION


def test_trivial_family_persists():
    spec = trivial_family(0)
    line = line_through((1, 0, 0, 1), (0, 0, -1, 1), XYZW, spec.component(1))
    res = lift_solve(spec, line, 3)
    assert res.status == ("solved", 3) and res.ideal == []
    assert all(v.is_zero for v in res.values.values())


def test_model_family_has_empty_ideal():
    spec = model_family(0)
    (line,) = prelog_lines_K3(spec, spec.component(1))
    for N in (1, 2, 3):
        assert obstruction_ideal(spec, line, N) == []


def test_line_through_fixed_point_rejected(example):
    spec, _ = example
    with pytest.raises(AnsatzError):
        lift_ansatz(spec, line_through((1, 0, 0, 1), (0, 0, 0, 1), XYZW, spec.component(1)))


def test_order_systems_respect_degree_bound(example):
    spec, line = example
    an = lift_ansatz(spec, line)
    sys1 = order_system(spec, an, {}, 1)
    assert len(sys1.matrix) <= spec.d + 2


@pytest.mark.parametrize("seed", range(3))
def test_resubstitution_kills_low_orders_cubic(seed):
    spec = cubic_fixture(seed)
    comp = spec.component(seed % 3)
    for line in prelog_lines_cubic(spec, comp)[:3]:
        res = lift_solve(spec, line, 3)
        assert res.solved
        series = resubstitute(spec, res, 3)
        assert series.is_zero


def test_resubstitution_on_a_solved_specialization(example):
    spec, line = example
    sp = spec.specialize({"a": Fraction(0), "b": Fraction(2, 3)})
    res = lift_solve(sp, line, 2)
    assert res.solved
    assert resubstitute(sp, res, 2).is_zero


def test_reparametrization_does_not_change_the_ideal(example):
    spec, line = example
    assert obstruction_ideal(spec, line, 2, reparametrize=True) == obstruction_ideal(spec, line, 2)


@pytest.mark.parametrize("seed", range(3))
def test_reparametrization_invariance_on_fixtures(seed):
    spec = k3_fixture(seed, lines=1, normal="y", params=("a", "b"))
    (line,) = prelog_lines_K3(spec, spec.component(1))
    assert obstruction_ideal(spec, line, 2, reparametrize=True) == obstruction_ideal(spec, line, 2)


def test_per_order_systems_are_nonsingular_when_solved():
    spec = cubic_fixture(0)
    line = prelog_lines_cubic(spec, spec.component(0))[0]
    res = lift_solve(spec, line, 3)
    assert all(system.unique for system in res.systems)


def test_model_case_constant():
    assert model_case_check(P("1"), 3)


def test_model_case_quadratic():
    assert model_case_check(P("1 + s^2"), 4)


def test_model_case_random_cubics():
    rng = random.Random(2024)
    for _ in range(60):
        coeffs = [random_rational(rng, 5, nonzero=False) for _ in range(4)]
        if coeffs[-1] == 0:
            coeffs[-1] = Fraction(1)
        zeta = sum((Poly.monomial({"s": i}, c) for i, c in enumerate(coeffs)), Poly())
        assert model_case_check(zeta, 4)


def test_model_case_rejects_other_variables():
    with pytest.raises(ValueError):
        model_case_check(P("1 + x"), 2)


def test_lift_order_must_be_positive(example):
    with pytest.raises(ValueError):
        lift_solve(*example, 0)
