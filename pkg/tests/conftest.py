"""Per-criterion PASS/FAIL report for tests marked ``acceptance``."""

from collections import defaultdict

import pytest

_outcomes: dict[tuple[int, str], list[bool]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or report.failed:
        _outcomes[marker.args].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), results in sorted(_outcomes.items()):
        status = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} {status}: {title}")
