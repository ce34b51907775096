"""Strongly monochromatic cliques, forcing checks, escape colourings and peeling."""

from __future__ import annotations

from dataclasses import dataclass

from .cliques import BudgetExhausted, IndependenceResult, has_clique, k_independence_number
from .graph import CliqueWitness, ColourPattern, VertexColouring


def find_strongly_mono_clique(
    p: ColourPattern, c: VertexColouring, k: int
) -> CliqueWitness | None:
    """A ``K_k`` whose vertices all have colour ``i`` and whose edges all lie in layer ``i``."""
    if c.n != p.n or c.r != p.r:
        raise ValueError("colouring does not match the pattern")
    for i, layer in enumerate(p.layers, start=1):
        w = has_clique(layer, k, within=c.class_mask(i))
        if w is not None:
            return CliqueWitness(w.vertices, layer=i)
    return None


def greedy_escape_colouring(p: ColourPattern, k: int) -> VertexColouring | None:
    """Colour each vertex by its first layer of degree <= k-2, if every vertex has one.

    Such a vertex cannot sit in a ``K_k`` of that layer, so the result has no
    strongly monochromatic ``K_k``.
    """
    colours = []
    for v in range(p.n):
        for i, layer in enumerate(p.layers, start=1):
            if layer.degree(v) <= k - 2:
                colours.append(i)
                break
        else:
            return None
    return VertexColouring(tuple(colours), p.r)


@dataclass(frozen=True)
class Forces:
    nodes: int = 0

    @property
    def forces(self) -> bool:
        return True


@dataclass(frozen=True)
class Escaped:
    colouring: VertexColouring
    nodes: int = 0

    @property
    def forces(self) -> bool:
        return False


ForcingVerdict = Forces | Escaped


def pattern_forces(p: ColourPattern, k: int, use_greedy: bool = True) -> ForcingVerdict:
    """Decide whether every ``r``-colouring of the vertices has a strongly monochromatic ``K_k``.

    Backtracks over vertex colours in index order, cutting a branch as soon as
    the newest vertex completes a strongly monochromatic ``K_k``.
    """
    n, r = p.n, p.r
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        if n == 0:
            return Escaped(VertexColouring((), r))
        return Forces()
    if use_greedy:
        g = greedy_escape_colouring(p, k)
        if g is not None:
            return Escaped(g)

    layers = [g.adj for g in p.layers]
    classes = [0] * r
    colours = [0] * n
    nodes = 0

    def assign(v: int) -> bool:
        nonlocal nodes
        if v == n:
            return True
        for i in range(r):
            nodes += 1
            nbrs = classes[i] & layers[i][v]
            if nbrs.bit_count() >= k - 1 and has_clique(p.layers[i], k - 1, within=nbrs) is not None:
                continue
            classes[i] |= 1 << v
            colours[v] = i + 1
            if assign(v + 1):
                return True
            classes[i] &= ~(1 << v)
        return False

    if assign(0):
        return Escaped(VertexColouring(tuple(colours), r), nodes)
    return Forces(nodes)


@dataclass(frozen=True)
class PeelResult:
    """Outcome of removing a large ``K_k``-free set of the last layer.

    ``pattern`` lives on the kept vertices, re-indexed; ``kept[j]`` is the
    original label of new vertex ``j``.
    """

    pattern: ColourPattern
    removed: tuple[int, ...]
    kept: tuple[int, ...]
    independence: IndependenceResult

    @property
    def exact(self) -> bool:
        return self.independence.exact


def peel(
    p: ColourPattern, k: int, budget: int | None = None, allow_partial: bool = False
) -> PeelResult:
    """Drop a maximum ``K_k``-free set ``I`` of the last layer and the last layer itself.

    If ``p`` forces a strongly monochromatic ``K_k`` and ``I`` is maximum, so does
    the result with one colour fewer. With ``allow_partial`` a budget-limited ``I``
    is accepted and the result is marked inexact instead of raising.
    """
    if p.r < 2:
        raise ValueError("peeling needs at least two layers")
    try:
        ind = k_independence_number(p.layers[-1], k, budget)
    except BudgetExhausted as exc:
        if not allow_partial:
            raise
        ind = exc.partial
    removed = set(ind.witness)
    kept = [v for v in range(p.n) if v not in removed]
    layers = tuple(g.induced(kept)[0] for g in p.layers[:-1])
    return PeelResult(ColourPattern(layers), tuple(sorted(removed)), tuple(kept), ind)
