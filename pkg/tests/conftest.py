import pytest
from hypothesis import HealthCheck, settings

from toricres import io

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES = []

# Generators of the cone over the two-point blow-up of CP^2.
CP2_TWO = [(0, 0, 1), (0, 1, 1), (1, 2, 1), (2, 1, 1), (1, 0, 1)]
REEB_CP2_TWO = 9 / 16 * (-1 + 33 ** 0.5)


@pytest.fixture(scope="session")
def bundled():
    return {name: io.load_bundled(name) for name in io.bundled_names()}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
