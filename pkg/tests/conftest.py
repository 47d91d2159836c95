import re

_CRITERIA = {
    1: "exceptional-class counts n=1..8",
    2: "K-null spherical counts n=2..8",
    3: "reduction totality with sound certificates",
    4: "non-spherical certificate at n=11",
    5: "decomposition round-trips, 1000 words per variant",
    6: "Lagrangian sphere criterion against areas",
    7: "reflection algebra property suites",
    8: "parser round-trip",
}

_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if match:
        _results[int(match.group(1))] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        if num in _results:
            verdict = "PASS" if _results[num] == "passed" else "FAIL"
        else:
            verdict = "NOT RUN"
        terminalreporter.write_line(f"criterion {num}: {verdict} - {_CRITERIA[num]}")
