import pytest

from planarfvs.graph import MultiGraph

ACCEPTANCE_LINES: list[str] = []


def cycle(n: int) -> MultiGraph:
    return MultiGraph.from_edges([(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> MultiGraph:
    return MultiGraph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph.from_edges(outer + spokes + inner)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def c5():
    return cycle(5)
