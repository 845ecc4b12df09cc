from pathlib import Path

import pytest
from hypothesis import strategies as st

from robkit import IncompleteMatrix
from robkit.fileio import parse_matrix

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name: str) -> IncompleteMatrix:
    return parse_matrix(FIXTURES / f"{name}.txt")


@pytest.fixture
def gap6():
    return load("gap6")


@pytest.fixture
def claw4():
    return load("claw4")


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@st.composite
def matrices(draw, max_n=6, max_value=3, missing=0.25, min_n=1):
    """Symmetric matrices over 0..max_value; each upper cell missing with some probability."""
    n = draw(st.integers(min_n, max_n))
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            gone = missing > 0 and draw(st.floats(0, 1)) < missing
            v = None if gone else draw(st.integers(0, max_value))
            rows[i][j] = rows[j][i] = v
    return IncompleteMatrix(rows)


# acceptance reporting: tests marked @pytest.mark.criterion(k, text) get one
# PASS/FAIL line each in the terminal summary

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, text = mark.args
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _criteria.append((number, text, status, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, status, secs in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number}: {status}  ({secs:.2f}s)  {text}")
