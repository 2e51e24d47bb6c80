import pytest

from zastava.scalar import make_spec_env

PI_LIST = [(1, 1), (1, 2), (2, 2), (1, 1, 1), (1, 1, 2)]


@pytest.fixture
def env2():
    return make_spec_env(2, 10, 42)


def env_for(pi, seed=0, cap=10):
    return make_spec_env(sum(pi), cap, seed)


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
