from itertools import combinations, product
from math import ceil, log

import pytest

from ramseypack.cliques import has_clique, k_independence_number
from ramseypack.graph import Graph
from ramseypack.lll import Exhausted, LLLParams, carve_layer, lll_feasibility, pack_triangle_free


def brute_force_packing_exists(n: int, r: int) -> bool:
    """Any r edge-disjoint triangle-free graphs on n vertices, each with alpha < n/r?"""
    edges = list(combinations(range(n), 2))
    for cols in product(range(r + 1), repeat=len(edges)):
        layers = [Graph.from_edges(n, [e for e, c in zip(edges, cols) if c == i]) for i in range(1, r + 1)]
        if all(has_clique(g, 3) is None and k_independence_number(g, 2).size * r < n for g in layers):
            return True
    return False


@pytest.mark.parametrize("seed", range(5))
def test_pack_5_2(seed):
    res = pack_triangle_free(5, 2, seed)
    assert res.success and res.pattern.shared_edge_count() == 0
    for g in res.pattern.layers:
        assert has_clique(g, 3) is None
        ind = k_independence_number(g, 2)
        assert ind.exact and ind.size == 2


def test_pack_4_2_exhausted_and_oracle():
    with pytest.raises(Exhausted) as exc:
        pack_triangle_free(4, 2, 0, max_resamples=3000)
    assert exc.value.stats["layer"] == 1
    assert not brute_force_packing_exists(4, 2)
    assert brute_force_packing_exists(5, 2)


def test_pack_is_reproducible():
    a = pack_triangle_free(8, 2, 7)
    b = pack_triangle_free(8, 2, 7)
    assert a.pattern == b.pattern and a.to_dict() == b.to_dict()


def test_host_with_large_independent_set():
    host = Graph.from_edges(4, [(0, 1)])
    with pytest.raises(Exhausted):
        carve_layer(host, 2, 0, max_resamples=100)


def test_exact_limit_guard():
    with pytest.raises(ValueError):
        carve_layer(Graph.complete(130), 10, 0)


def test_feasibility_reported_values():
    # n = ceil(C r^2 ln^2 r); the second condition only holds from r = 220 on
    def at(r):
        return lll_feasibility(ceil(1000 * r * r * log(r) ** 2), r)

    assert at(50).ineq1 and not at(50).ineq2
    assert at(200).ineq1 and not at(200).ineq2
    assert at(220).ineq1 and at(220).ineq2
    assert at(1000).ineq1 and at(1000).ineq2
    assert not lll_feasibility(10, 2).ineq2
    prm = LLLParams(100, 4)
    assert prm.p == pytest.approx(0.025) and prm.m == 25 and prm.x == pytest.approx(0.05 / 1000)
