import math

import pytest

from qent.core import OscillatorParams
from qent.numeric import build_grid

# filled by test_acceptance; printed at the end of the run
ACCEPTANCE_LINES = {}


@pytest.fixture
def unit():
    return OscillatorParams()


@pytest.fixture(scope="session")
def grid12():
    return build_grid(12.0, 2048)


@pytest.fixture(scope="session")
def grid10():
    return build_grid(10.0, 1024)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
