import pytest
from hypothesis import HealthCheck, settings

from dp4brauer.brauer import brauer_group
from dp4brauer.fixtures import EXAMPLE_POINT, bsd_pencil, example_pencil

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def example():
    return example_pencil()


@pytest.fixture(scope="session")
def bsd():
    return bsd_pencil()


@pytest.fixture(scope="session")
def example_report(example):
    return brauer_group(example, hints=[EXAMPLE_POINT])


@pytest.fixture(scope="session")
def bsd_report(bsd):
    return brauer_group(bsd)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
