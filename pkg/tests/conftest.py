"""Collects acceptance outcomes and prints one verdict line per criterion."""

import re

_ACCEPTANCE: dict = {}
_NAME = re.compile(r"test_acceptance\.py::test_c(\d+)([a-z]?)_(\w+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2), m.group(3).replace("_", " "))
    if report.when == "call" or report.failed:
        prev = _ACCEPTANCE.get(key, (True, 0.0))
        _ACCEPTANCE[key] = (prev[0] and report.passed, prev[1] + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (num, suffix, label), (ok, secs) in sorted(_ACCEPTANCE.items()):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{verdict}  criterion {num}{suffix}: {label}  ({secs:.2f} s)")
