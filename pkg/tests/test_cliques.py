import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from ramseypack.cliques import BudgetExhausted, has_clique, is_k_free, k_independence_number, max_clique
from ramseypack.graph import Graph

from conftest import random_graph
from strategies import graphs


def naive_clique_number(g: Graph) -> int:
    best = 0
    for size in range(1, g.n + 1):
        if any(all(g.has_edge(a, b) for a, b in combinations(s, 2)) for s in combinations(range(g.n), size)):
            best = size
        else:
            break
    return best


def naive_alpha_k(g: Graph, k: int) -> int:
    best = 0
    for size in range(g.n + 1):
        for s in combinations(range(g.n), size):
            if is_k_free(g, s, k):
                best = size
                break
        else:
            break
    return best


@given(graphs(max_n=9))
def test_max_clique_matches_naive(g):
    vs, exact = max_clique(g)
    assert exact
    assert len(vs) == naive_clique_number(g)
    assert all(g.has_edge(a, b) for a, b in combinations(vs, 2))


@given(graphs(max_n=9))
def test_has_clique_consistent(g):
    w = naive_clique_number(g)
    for k in range(1, 5):
        found = has_clique(g, k)
        assert (found is not None) == (k <= w)
        if found:
            assert found.is_valid(g) and len(found.vertices) == k


def test_max_clique_vs_networkx(rng):
    for _ in range(30):
        g = random_graph(rng.randrange(10, 40), rng.random(), rng)
        nxg = nx.Graph(list(g.edges()))
        nxg.add_nodes_from(range(g.n))
        want = max((len(c) for c in nx.find_cliques(nxg)), default=0)
        assert len(max_clique(g)[0]) == want


def test_alpha_branch_and_bound_vs_naive_500():
    rnd = random.Random(2024)
    for _ in range(500):
        n = rnd.randrange(0, 11)
        g = random_graph(n, rnd.random(), rnd)
        res = k_independence_number(g, 2)
        assert res.exact and res.size == naive_alpha_k(g, 2)
        assert is_k_free(g, res.witness, 2) and len(res.witness) == res.size


@pytest.mark.parametrize("k", [3, 4])
def test_alpha_k_vs_naive(k):
    rnd = random.Random(k)
    for _ in range(60):
        g = random_graph(rnd.randrange(0, 10), rnd.random(), rnd)
        res = k_independence_number(g, k)
        assert res.size == naive_alpha_k(g, k)
        assert is_k_free(g, res.witness, k)


def test_alpha_known_values():
    assert k_independence_number(Graph.cycle(5), 2).size == 2
    assert k_independence_number(Graph.complete(6), 3).size == 2
    assert k_independence_number(Graph.turan(12, 3), 3).size == 8
    assert k_independence_number(Graph.empty(4), 2).size == 4


def test_budget_exhaustion_keeps_partial():
    g = random_graph(60, 0.1, random.Random(1))
    with pytest.raises(BudgetExhausted) as exc:
        k_independence_number(g, 3, budget=5)
    part = exc.value.partial
    assert not part.exact and is_k_free(g, part.witness, 3)
