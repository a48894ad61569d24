import pytest

from relforest import build_from_arcs

G3_ARCS = [(0, 1, 1), (1, 0, 2), (1, 2, 4), (2, 0, 3)]


@pytest.fixture
def g3():
    return build_from_arcs(3, G3_ARCS)


def pytest_terminal_summary(terminalreporter):
    try:
        from tests.test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
