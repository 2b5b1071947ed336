import json
from pathlib import Path

import pytest

from coverpoly.graph import Graph
from coverpoly.monomial import Monomial

FIXTURES = Path(__file__).parent / "fixtures"

# the 5-cycle labeled y1, y4, y2, y3, y5 in traversal order
C5_EDGES = [("y1", "y4"), ("y4", "y2"), ("y2", "y3"), ("y3", "y5"), ("y5", "y1")]


def mono(text: str) -> Monomial:
    return Monomial.parse(text)


def load_graphs50() -> list[Graph]:
    data = json.loads((FIXTURES / "graphs50.json").read_text())
    return [Graph.from_edges(d["edges"], vertices=d["vertices"]) for d in data]


@pytest.fixture
def c5() -> Graph:
    return Graph.from_edges(C5_EDGES)


@pytest.fixture
def example_pair():
    return mono("y1*y2*y3^2*y4*y5"), mono("y1*y2*y3*y4^2*y5")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
