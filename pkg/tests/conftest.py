import numpy as np
import pytest
from hypothesis import settings

from tetrahull.platonic import SolidKind, unit_solid

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def solids():
    return {k: unit_solid(k) for k in SolidKind}


@pytest.fixture
def rng():
    return np.random.default_rng(20250405)


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
