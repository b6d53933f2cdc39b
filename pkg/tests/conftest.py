import pytest
from hypothesis import HealthCheck, settings

from cosetvoa.coset import CosetContext

settings.register_profile(
    "default", deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: dict = {}


@pytest.fixture(scope="session")
def ctx1():
    return CosetContext(1)


@pytest.fixture(scope="session")
def ctx2():
    return CosetContext(2)


@pytest.fixture(scope="session")
def ctx3():
    return CosetContext(3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
