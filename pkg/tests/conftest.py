import pytest

from cyclopaley.field import make_field
from cyclopaley.graph import pp_graph

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def f625():
    return make_field(5, 4)


@pytest.fixture(scope="session")
def f2401():
    return make_field(7, 4)


@pytest.fixture(scope="session")
def pp625():
    return pp_graph(5, 4, 6, (0, 1, 3))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
