"""Collects outcomes of the acceptance criteria and prints one line per criterion."""

CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        CRITERIA[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(CRITERIA, key=lambda n: int(n.split("_")[2])):
        outcome, duration = CRITERIA[name]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f} s)")
