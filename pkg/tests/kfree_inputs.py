"""Random K_{k+1}-free graphs: induced pieces of moment layers and thinned Turan graphs."""

import random
from functools import lru_cache

from ramseypack.graph import Graph
from ramseypack.moment import build_moment_pattern


@lru_cache(maxsize=None)
def _moment_layer(k: int, q: int, seed: int) -> Graph:
    return build_moment_pattern(k, 1, seed, q=q).layers[0].graph


def kfree_graphs(count: int, seed: int = 0):
    rnd = random.Random(seed)
    for i in range(count):
        k = (2, 3, 4)[i % 3]
        n = rnd.randrange(1, 201)
        if i % 2 == 0:
            g = _moment_layer(k, 7, seed)
            # a union of a few lines gives dense induced pieces
            vs = rnd.sample(range(g.n), n)
            yield k, g.induced(vs)[0]
        else:
            parts = [rnd.randrange(k) for _ in range(n)]
            keep = rnd.random()
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                     if parts[u] != parts[v] and rnd.random() < keep]
            yield k, Graph.from_edges(n, edges)
