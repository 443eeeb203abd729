import pytest

from cannonball import config

ACCEPTANCE_LINES = []


@pytest.fixture
def budget():
    """Run a block under a temporary memory budget."""

    def use(nbytes):
        return config.using(config.current().with_(memory_budget_bytes=nbytes))

    return use


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
