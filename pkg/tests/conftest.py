import pytest

from immred.graphs import UndirectedGraph


@pytest.fixture
def k33():
    return UndirectedGraph(6, [(a, b) for a in range(3) for b in range(3, 6)])


@pytest.fixture
def triple_edge():
    return UndirectedGraph(2, [(0, 1), (0, 1), (0, 1)])


@pytest.fixture
def single_edge():
    return UndirectedGraph(2, [(0, 1)])


@pytest.fixture
def triangle():
    return UndirectedGraph(3, [(0, 1), (1, 2), (0, 2)])
