import pytest
from hypothesis import settings

# a single shared CPU makes per-example timing noisy
settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
