import numpy as np
import pytest

from bcs_anneal.hamiltonians import generate_levels
from bcs_anneal.sector import build_sector


@pytest.fixture
def sector6():
    return build_sector(6, 0)


@pytest.fixture
def levels6():
    return generate_levels(6, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record a PASS/FAIL line; the lines are printed in the terminal summary."""

    def record(number, title, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title}"
        if detail:
            line += f"  [{detail}]"
        _CRITERIA.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
