import pytest
from hypothesis import given

from ramseypack.graph import (
    CliqueWitness, ColourPattern, Graph, GraphError, PatternError, VertexColouring, bits_array, iter_bits, mask_of,
)

from strategies import graphs


def test_iter_bits_small_and_large():
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    big = (1 << 5000) | (1 << 2049) | 1
    assert list(iter_bits(big)) == [0, 2049, 5000]
    assert bits_array(big).tolist() == [0, 2049, 5000]
    assert mask_of([0, 3, 5]) == 0b101001


def test_constructors():
    assert Graph.complete(5).num_edges == 10
    assert Graph.cycle(5).degrees() == [2] * 5
    assert Graph.path(4).num_edges == 3
    t = Graph.turan(10, 3)
    assert t.num_edges == 33  # parts 3, 3, 4
    assert Graph.complete_multipartite([9, 10, 10]).num_edges == 9 * 10 + 9 * 10 + 10 * 10


def test_rejects_loops_and_bad_vertices():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphError):
        Graph.from_adjacency(2, [0b10, 0b00])  # asymmetric


@given(graphs())
def test_complement_involution(g):
    c = g.complement()
    assert c.complement() == g
    assert g.num_edges + c.num_edges == g.n * (g.n - 1) // 2
    assert g.common_edges(c) == 0


@given(graphs(min_n=1))
def test_induced_keeps_edges(g):
    keep = list(range(0, g.n, 2))
    h, back = g.induced(keep)
    assert back == keep
    for a, b in h.edges():
        assert g.has_edge(back[a], back[b])
    assert h.num_edges == sum(1 for u, v in g.edges() if u in keep and v in keep)


def test_pattern_rejects_shared_edge():
    a = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(PatternError):
        ColourPattern.of(a, a)
    with pytest.raises(PatternError):
        ColourPattern.of(a, Graph.empty(4))
    p = ColourPattern.of(a, Graph.from_edges(3, [(1, 2)]))
    assert p.n == 3 and p.r == 2 and p.union().num_edges == 2 and p.shared_edge_count() == 0


def test_vertex_colouring_and_witness():
    c = VertexColouring((1, 2, 1), 2)
    assert c.class_mask(1) == 0b101
    with pytest.raises(ValueError):
        VertexColouring((0, 1), 2)
    g = Graph.complete(3)
    assert CliqueWitness((0, 1, 2)).is_valid(g)
    assert not CliqueWitness((0, 2), layer=1).is_valid(g, VertexColouring((1, 2, 2), 2))
