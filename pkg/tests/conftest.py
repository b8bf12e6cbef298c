import pytest

from fibrum.grp import build_group

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def g():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_group(name)
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
