import re
from collections import defaultdict

_CRITERIA: dict[int, list[str]] = defaultdict(list)
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or report.outcome == "failed":
        _CRITERIA[int(m.group(1))].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        status = "PASS" if all(o == "passed" for o in _CRITERIA[k]) else "FAIL"
        terminalreporter.write_line(f"criterion {k}: {status}")
