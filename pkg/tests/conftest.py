import numpy as np
import pytest

from svead.core import Dataset

_ACCEPTANCE: list[tuple[str, str, str]] = []


@pytest.fixture
def record():
    """Register the outcome of one acceptance criterion for the end-of-run summary."""

    def _record(criterion: str, passed: bool | None, detail: str = "") -> bool | None:
        status = "SKIP" if passed is None else "PASS" if passed else "FAIL"
        _ACCEPTANCE.append((criterion, status, detail))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, status, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {criterion}  {detail}")


@pytest.fixture
def line_fixture():
    """Points {0, 1, 2, 10, 11} on a line; anchors at rows 0 and 3."""
    return Dataset(np.array([[0.0], [1.0], [2.0], [10.0], [11.0]]), name="line"), np.array([0, 3])


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
