import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from expmat import ExponentMatrix  # noqa: E402

EXAMPLE_A_ROWS = [[0, 2, 5, 5], [4, 0, 3, 3], [6, 2, 0, 2], [4, 4, 2, 0]]
EXAMPLE_ROW9 = (0, 5, 0, 0, 1, 3, 3, 3, 5)


@pytest.fixture
def example_a():
    return ExponentMatrix(EXAMPLE_A_ROWS)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
