import random
from fractions import Fraction

import pytest

from tf2m.graph import WeightedGraph
from tf2m.graph import enumerate_triangles


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='run acceptance-scale loops')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


def complete_graph(n, weight=1):
    return WeightedGraph(n, {(u, v): Fraction(weight) for u in range(n) for v in range(u + 1, n)})


def k3_321():
    """
    Triangle 0 1 2 with w(01) = 3 and the other two sides 2
    """
    return WeightedGraph(3, {(0, 1): 3, (0, 2): 2, (1, 2): 2})


def random_graph(rng, n, p, lo=1, hi=5, loops=0.0):
    weights = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                weights[(u, v)] = Fraction(rng.randint(lo, hi))
    for v in range(n):
        if rng.random() < loops:
            weights[(v, v)] = Fraction(rng.randint(lo, hi))
    return WeightedGraph(n, weights)


def random_two_matching(rng, graph, triangles=None):
    """
    Greedy 2-matching over shuffled edges, T-free when triangles is given
    """
    edges = list(graph.edges())
    rng.shuffle(edges)
    chosen = set()
    degrees = {}
    for u, v in edges:
        need = {u: 2} if u == v else {u: 1, v: 1}
        if any(degrees.get(x, 0) + d > 2 for x, d in need.items()):
            continue
        if rng.random() < 0.3:
            continue
        chosen.add((u, v))
        if triangles is not None and not triangles.is_t_free(chosen):
            chosen.discard((u, v))
            continue
        for x, d in need.items():
            degrees[x] = degrees.get(x, 0) + d
    return frozenset(chosen)


@pytest.fixture
def rng():
    return random.Random(20260418)


@pytest.fixture
def k3():
    graph = k3_321()
    return graph, enumerate_triangles(graph)


@pytest.fixture
def k4():
    graph = complete_graph(4)
    return graph, enumerate_triangles(graph)


@pytest.fixture
def write_file(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return write
