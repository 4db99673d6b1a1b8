import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from frattini.catalog import build  # noqa: E402

from helpers import ACCEPTANCE_LINES  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def s7():
    # built once so its subgroup lattice is cached for every test that needs it
    return build("S7")


@pytest.fixture(scope="session")
def a7():
    return build("A7")
