import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from knotfib import parse, spiral_knot  # noqa: E402

HOPF = """\
surface rank=0
crossing u +1
crossing v +1
comp K1: u v
comp K2: u v
"""


@pytest.fixture
def hopf():
    return parse(HOPF)


@pytest.fixture
def k3():
    return spiral_knot(3)


def pytest_terminal_summary(terminalreporter):
    from corpus import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
