import subprocess
import sys

import pytest

from degenlift.cli import EXIT_FAILED, EXIT_OBSTRUCTED, EXIT_OK, main, run
from degenlift.familyfile import serialize_family
from degenlift.fixtures import cubic_fixture


def machine(argv):
    rep, code, _ = run(argv + ["--format", "machine"])
    return rep, code, rep.render_machine()


def test_kuranishi_report_has_vanishing_condition():
    rep, code, text = machine(["kuranishi", "quartic_k3_example", "--order", "1"])
    assert code == EXIT_OK
    assert "line0.vanishing_condition = a^2 + a*b + 4*a + 6*b - 4" in text
    assert rep.get("kuranishi", "line0") == "x - z - w = 0, y = 0"


def test_kuranishi_residues_in_report():
    rep, _, _ = machine(["kuranishi", "quartic_k3_example", "--component", "y"])
    assert str(rep.get("kuranishi", "line0.b1(1, 0, 0, 1)")) == "(a + b + 2)/(a + 4)"
    assert str(rep.get("kuranishi", "line0.b1(0, 0, -1, 1)")) == "(a + b - 2)/2"
    assert str(rep.get("kuranishi", "line0.b1(1, 0, 1, 0)")) == "0"


def test_expect_liftable_exit_status():
    _, code, _ = run(["kuranishi", "quartic_k3_example", "--component", "y", "--expect-liftable"])
    assert code == EXIT_OBSTRUCTED
    _, code, _ = run(
        ["kuranishi", "quartic_k3_example", "--line", "1,0,0,1;0,0,-1,1", "--set", "a=0,b=2/3", "--expect-liftable"]
    )
    assert code == EXIT_OK
    # the second line found in the same specialization stays obstructed
    rep, code, _ = run(
        ["kuranishi", "quartic_k3_example", "--component", "y", "--set", "a=0,b=2/3", "--expect-liftable"]
    )
    assert code == EXIT_OBSTRUCTED and str(rep.get("kuranishi", "line1.value")) == "1"


def test_lift_report():
    rep, code, text = machine(["lift", "quartic_k3_example", "--order", "2", "--component", "y"])
    assert code == EXIT_OK
    assert "line0.obstruction_ideal = [a^2 + a*b + 4*a + 6*b - 4]" in text
    assert "line0.c1 = -4" in text
    assert "line0.d1 = -a - b + 2" in text
    assert "line0.a1 = 0" in text


def test_lift_with_explicit_line():
    rep, _, _ = machine(["lift", "quartic_k3_example", "--line", "1,0,0,1;0,0,-1,1", "--set", "a=0,b=2/3"])
    assert rep.get("lift", "line0.status") == "solved(1)"


def test_census_quintic():
    rep, code, text = machine(["census", "quintic"])
    assert code == EXIT_OK
    for key, value in [("class1", 575), ("class2", 675), ("total_3fold", 2875)]:
        assert f"{key} = {value}" in text


def test_census_cubic_modes():
    assert machine(["census", "cubic"])[0].get("census", "total") == 27
    assert machine(["census", "cubic-plane-quadric"])[0].get("census", "total") == 27


def test_census_k3_needs_family():
    assert main(["census", "k3"]) == EXIT_FAILED


def test_disk_profile():
    rep, _, text = machine(["disk-profile", "--n", "5"])
    assert "summands = [-1, -1, 0]" in text
    assert "family_dimension = 4" in text


def test_singular_locus_lists_example_points():
    rep, _, _ = machine(["singular-locus", "quartic_k3_example"])
    assert rep.get("singular_locus", "{y=0,z=0}.points") == ["(1, 0, 0, 1)"]


def test_prelog_lines_on_cubic_file(tmp_path):
    path = tmp_path / "cubic.fam"
    path.write_text(serialize_family(cubic_fixture(0)), encoding="utf-8")
    rep, _, _ = machine(["prelog-lines", str(path)])
    assert rep.get("lines", "count") == 27
    assert rep.get("lines", "line0.log_normal_degree") == -1
    assert rep.get("lines", "line0.cohomology") == [0, 0]


def test_classify_quintic_line(tmp_path):
    from degenlift.fixtures import quintic_family

    path = tmp_path / "quintic.fam"
    path.write_text(serialize_family(quintic_family(0)), encoding="utf-8")
    rep, _, _ = machine(["classify", str(path), "--line", "0,0,0,1,1;0,1,1,0,0"])
    assert rep.get("classification", "class") == "class2I"


def test_verify_example_passes():
    rep, code, _ = machine(["verify-example", "--seed", "3"])
    assert code == EXIT_OK and rep.ok


def test_machine_reports_are_deterministic():
    argv = ["lift", "quartic_k3_example", "--order", "2", "--format", "machine"]
    first, second = (run(argv)[0].render_machine() for _ in range(2))
    assert first == second
    assert "[provenance]" in first and "spec_hash = sha256:" in first


def test_unknown_family_is_an_error(capsys):
    assert main(["kuranishi", "no_such_family"]) == EXIT_FAILED
    assert "no shipped family" in capsys.readouterr().err


def test_bad_order_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["lift", "quartic_k3_example", "--order", "0"])
    assert exc.value.code == 2


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "degenlift.cli", "disk-profile", "--n", "4", "--format", "machine"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert "family_dimension = 2" in out.stdout
