import numpy as np
import pytest
from hypothesis import strategies as st

from graphdeco.graph_model import Graph, random_compatible_operator, random_connected_graph

ACCEPTANCE_LINES = []


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, k - 1)) for k in range(1, n)]
    extra = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))
    edges = [(p, k) for k, p in enumerate(parents, start=1)]
    edges += [(i, j) for i, j in extra if i != j]
    return Graph(n, tuple(edges))


@st.composite
def graph_and_operator(draw, min_n=1, max_n=8):
    """A connected graph with either its Laplacian or a random compatible matrix."""
    from graphdeco.graph_model import laplacian

    g = draw(connected_graphs(min_n, max_n))
    if draw(st.booleans()):
        return g, laplacian(g)
    seed = draw(st.integers(0, 2**32 - 1))
    return g, random_compatible_operator(g, np.random.default_rng(seed))


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def random_graph(rng):
    return lambda n: random_connected_graph(n, rng)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
