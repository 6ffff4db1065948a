import warnings

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from argwind.geometry import Circle, validate_domain

settings.register_profile("default", max_examples=30, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def disc():
    return validate_domain(Circle(0, 1))


@pytest.fixture(scope="session")
def annulus():
    return validate_domain(Circle(0, 1), [Circle(0, 0.5)])


@pytest.fixture(scope="session")
def triple():
    return validate_domain(Circle(0, 1), [Circle(-0.4, 0.15), Circle(0.45, 0.15)])


@pytest.fixture(scope="session")
def offcenter():
    return validate_domain(Circle(1 + 1j, 2), [Circle(1.5 + 1j, 0.5), Circle(0.3 + 0.6j, 0.3)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
