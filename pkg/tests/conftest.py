import sys
from pathlib import Path

import pytest
from hypothesis import settings

from rabitunnel import ModelParams, converged_spectrum

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

WEAK = ModelParams(3.0, 1.3)
STRONG = ModelParams(3.0, 2.0)


@pytest.fixture(scope="session")
def weak():
    return WEAK


@pytest.fixture(scope="session")
def strong():
    return STRONG


@pytest.fixture(scope="session")
def weak_spectrum():
    return converged_spectrum(WEAK, k=20, tol=1e-9)


@pytest.fixture(scope="session")
def strong_spectrum():
    return converged_spectrum(STRONG, k=20, tol=1e-9)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
