"""Shared fixtures and the acceptance summary.

Tests marked ``@pytest.mark.criterion(n, "label")`` are tallied and printed as
one PASS/FAIL line per criterion at the end of the run.
"""
import pytest

_RESULTS = {}
_NOTES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, label = marker.args
        ok = report.outcome == "passed"
        prev = _RESULTS.get(number)
        _RESULTS[number] = (label, ok and (prev is None or prev[1]))


@pytest.fixture
def acceptance_note():
    """Append an informational line to the acceptance summary."""
    return _NOTES.append


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        label, ok = _RESULTS[number]
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {label}")
    for note in _NOTES:
        tr.write_line(f"NOTE  {note}")
