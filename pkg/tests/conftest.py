import sys

import pytest
from hypothesis import strategies as st

from netctrl.graph import graph_from_edges, graph_from_mask, is_connected

TWO_HUB_EDGES = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]


@pytest.fixture
def two_hub():
    return graph_from_edges(5, TWO_HUB_EDGES)


@st.composite
def connected_graphs(draw, min_n=2, max_n=6):
    n = draw(st.integers(min_n, max_n))
    m = n * (n - 1) // 2
    mask = draw(st.integers(0, (1 << m) - 1).filter(lambda k: is_connected(graph_from_mask(n, k))))
    return graph_from_mask(n, mask)


@st.composite
def graph_and_leaders(draw, min_n=2, max_n=6):
    g = draw(connected_graphs(min_n, max_n))
    leaders = draw(st.sets(st.integers(1, g.n), min_size=1, max_size=g.n - 1))
    return g, tuple(sorted(leaders))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
