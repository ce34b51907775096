"""Bitset-backed graphs, colour patterns and vertex colourings.

Vertices are the integers ``0..n-1``. Adjacency is one Python ``int`` per
vertex whose bit ``u`` is set iff ``u`` is a neighbour, so neighbourhood
intersections are single ``&`` operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

# Above this many bits, bit extraction goes through numpy instead of
# repeated lowest-bit stripping (which is quadratic in the int size).
_NUMPY_BITS_THRESHOLD = 2048


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in increasing order."""
    if x.bit_length() > _NUMPY_BITS_THRESHOLD:
        yield from bits_array(x).tolist()
        return
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits_array(x: int) -> np.ndarray:
    nbytes = (x.bit_length() + 7) // 8
    if nbytes == 0:
        return np.zeros(0, dtype=np.int64)
    raw = np.frombuffer(x.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little"))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_from_array(idx: np.ndarray, n: int) -> int:
    """Bitset with bits ``idx`` set, built via numpy for large vertex sets."""
    bits = np.zeros(n, dtype=np.uint8)
    bits[idx] = 1
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


class GraphError(ValueError):
    pass


@dataclass(frozen=True, eq=True)
class Graph:
    """Loop-free undirected graph on ``0..n-1``.

    Build instances through the classmethods; the raw constructor trusts
    its input. ``Graph.from_adjacency(..., validate=True)`` checks symmetry.
    """

    n: int
    adj: tuple[int, ...]

    # -- constructors -------------------------------------------------
    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def from_adjacency(cls, n: int, adj: Sequence[int], validate: bool = True) -> Graph:
        if len(adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adj)}")
        g = cls(n, tuple(adj))
        if validate:
            g.check()
        return g

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_multipartite(cls, sizes: Sequence[int]) -> Graph:
        n = sum(sizes)
        full = (1 << n) - 1
        adj = [0] * n
        start = 0
        for s in sizes:
            part = ((1 << s) - 1) << start
            for v in range(start, start + s):
                adj[v] = full ^ part
            start += s
        return cls(n, tuple(adj))

    @classmethod
    def turan(cls, n: int, parts: int) -> Graph:
        base, extra = divmod(n, parts)
        sizes = [base + 1 if i < extra else base for i in range(parts)]
        return cls.complete_multipartite(sizes)

    # -- invariants ---------------------------------------------------
    def check(self) -> None:
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            if row & ~full:
                raise GraphError(f"vertex {v} has neighbours outside 0..{self.n - 1}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    # -- accessors ----------------------------------------------------
    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    # -- derived graphs -----------------------------------------------
    def complement(self) -> Graph:
        full = self.vertex_mask
        return Graph(self.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(self.adj)))

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph, re-indexed; returns it with the new->old map."""
        keep = sorted(set(vertices))
        pos = {old: new for new, old in enumerate(keep)}
        keep_mask = mask_of(keep)
        adj = []
        for old in keep:
            row = 0
            for u in iter_bits(self.adj[old] & keep_mask):
                row |= 1 << pos[u]
            adj.append(row)
        return Graph(len(keep), tuple(adj)), keep

    def union(self, other: Graph) -> Graph:
        self._same_order(other)
        return Graph(self.n, tuple(a | b for a, b in zip(self.adj, other.adj)))

    def difference(self, other: Graph) -> Graph:
        self._same_order(other)
        return Graph(self.n, tuple(a & ~b for a, b in zip(self.adj, other.adj)))

    def common_edges(self, other: Graph) -> int:
        self._same_order(other)
        return sum((a & b).bit_count() for a, b in zip(self.adj, other.adj)) // 2

    def _same_order(self, other: Graph) -> None:
        if other.n != self.n:
            raise GraphError(f"vertex counts differ: {self.n} vs {other.n}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class ColourPattern:
    """``r`` pairwise edge-disjoint layers on one vertex set."""

    layers: tuple[Graph, ...]

    def __post_init__(self):
        if not self.layers:
            raise PatternError("a colour pattern needs at least one layer")
        n = self.layers[0].n
        if any(g.n != n for g in self.layers):
            raise PatternError("all layers must share the vertex set")
        for (i, a), (j, b) in combinations(enumerate(self.layers), 2):
            if a.common_edges(b):
                raise PatternError(f"layers {i + 1} and {j + 1} share an edge")

    @classmethod
    def of(cls, *layers: Graph) -> ColourPattern:
        return cls(tuple(layers))

    @property
    def n(self) -> int:
        return self.layers[0].n

    @property
    def r(self) -> int:
        return len(self.layers)

    def union(self) -> Graph:
        g = self.layers[0]
        for h in self.layers[1:]:
            g = g.union(h)
        return g

    def induced(self, vertices: Iterable[int]) -> tuple[ColourPattern, list[int]]:
        keep = sorted(set(vertices))
        layers = tuple(g.induced(keep)[0] for g in self.layers)
        return ColourPattern(layers), keep

    def shared_edge_count(self) -> int:
        return sum(a.common_edges(b) for a, b in combinations(self.layers, 2))


@dataclass(frozen=True)
class VertexColouring:
    """Total map vertex -> colour in ``1..r``."""

    colours: tuple[int, ...]
    r: int

    def __post_init__(self):
        bad = [v for v, c in enumerate(self.colours) if not 1 <= c <= self.r]
        if bad:
            raise ValueError(f"vertex {bad[0]} has colour outside 1..{self.r}")

    @property
    def n(self) -> int:
        return len(self.colours)

    def class_mask(self, colour: int) -> int:
        return mask_of(v for v, c in enumerate(self.colours) if c == colour)

    def __getitem__(self, v: int) -> int:
        return self.colours[v]


@dataclass(frozen=True)
class CliqueWitness:
    vertices: tuple[int, ...]
    layer: int | None = None

    def is_valid(self, g: Graph, colouring: VertexColouring | None = None) -> bool:
        vs = self.vertices
        if any(not g.has_edge(a, b) for a, b in combinations(vs, 2)):
            return False
        if self.layer is not None and colouring is not None:
            return all(colouring[v] == self.layer for v in vs)
        return True
