import random
from itertools import product

import pytest

from ramseypack.forcing import (
    Escaped, Forces, find_strongly_mono_clique, greedy_escape_colouring, pattern_forces, peel,
)
from ramseypack.graph import ColourPattern, Graph, VertexColouring

from conftest import random_pattern


def c4_witness() -> ColourPattern:
    return ColourPattern.of(Graph.from_edges(4, [(0, 1), (1, 3), (3, 2), (2, 0)]),
                            Graph.from_edges(4, [(0, 3), (1, 2)]))


def naive_forces(p: ColourPattern, k: int) -> bool:
    for cols in product(range(1, p.r + 1), repeat=p.n):
        if find_strongly_mono_clique(p, VertexColouring(cols, p.r), k) is None:
            return False
    return True


def test_c4_pattern_forces_edge():
    assert isinstance(pattern_forces(c4_witness(), 2), Forces)


def test_forcing_matches_naive():
    rnd = random.Random(7)
    for _ in range(150):
        n, r, k = rnd.randrange(1, 7), rnd.randrange(1, 4), rnd.randrange(2, 4)
        p = random_pattern(n, r, rnd, p_absent=rnd.random() * 0.5)
        v = pattern_forces(p, k)
        assert v.forces == naive_forces(p, k)
        assert pattern_forces(p, k, use_greedy=False).forces == v.forces
        if isinstance(v, Escaped):
            assert find_strongly_mono_clique(p, v.colouring, k) is None


def test_greedy_escape_on_small_patterns():
    rnd = random.Random(3)
    for _ in range(200):
        r, k = rnd.randrange(1, 4), rnd.randrange(2, 4)
        p = random_pattern((k - 1) * r, r, rnd, p_absent=0.0)
        c = greedy_escape_colouring(p, k)
        assert c is not None and find_strongly_mono_clique(p, c, k) is None


def test_k1_always_forces():
    p = ColourPattern.of(Graph.empty(2), Graph.empty(2))
    assert pattern_forces(p, 1).forces
    assert not pattern_forces(ColourPattern.of(Graph.empty(0)), 1).forces


def test_peel_c4_witness():
    res = peel(c4_witness(), 2)
    assert res.exact and res.pattern.r == 1 and res.pattern.n >= 2
    assert pattern_forces(res.pattern, 2).forces
    assert len(res.removed) == res.independence.size == 2


def test_peel_needs_two_layers():
    with pytest.raises(ValueError):
        peel(ColourPattern.of(Graph.complete(3)), 2)
