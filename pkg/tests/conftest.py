import random

import pytest
from hypothesis import settings

from ramseypack.graph import ColourPattern, Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_pattern(n: int, r: int, rng: random.Random, p_absent: float = 0.3) -> ColourPattern:
    layers = [[] for _ in range(r)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() >= p_absent:
                layers[rng.randrange(r)].append((u, v))
    return ColourPattern(tuple(Graph.from_edges(n, es) for es in layers))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
