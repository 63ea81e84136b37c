import itertools
import random

import pytest

from crownkernel import Graph


def all_labeled_graphs(n):
    """Yield every labeled graph on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if (mask >> i) & 1])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def complete(n):
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def star(n):
    return Graph.from_edges(n, [(0, v) for v in range(1, n)])


def path(n):
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def empty(n):
    return Graph.from_edges(n, [])


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
