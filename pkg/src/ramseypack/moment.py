"""Edge-disjoint critical graphs from moment-curve line families.

Layer ``lam`` lives on the points of ``F_q^3``. Every line of
``lines_for(q, lam)`` is split at random into ``k`` nearly equal parts and
receives the complete ``k``-partite graph across those parts. Cliques
cannot straddle lines, so each layer is ``K_{k+1}``-free, and distinct
``lam`` use disjoint line families, so the layers share no edge.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from math import log
from typing import Iterable, Protocol

import numpy as np

from .cliques import has_clique
from .field import AffineLine, FieldPoint, Slope, least_admissible_prime, line_of_pair, line_point_array, lines_through_point
from .graph import ColourPattern, Graph, iter_bits, mask_from_array, mask_of
from .rng import substream


class StructuralError(Exception):
    """A layer is not the union of per-line graphs it claims to be."""


def part_sizes(q: int, k: int) -> tuple[int, ...]:
    """``k - (q mod k)`` parts of size ``floor(q/k)`` followed by ``q mod k`` of size ``ceil(q/k)``."""
    if q < k:
        raise ValueError(f"cannot split {q} points into {k} nonempty parts")
    lo, extra = divmod(q, k)
    return (lo,) * (k - extra) + (lo + 1,) * extra


def turan_edge_count(sizes: Iterable[int]) -> int:
    sizes = list(sizes)
    total = sum(sizes)
    return (total * total - sum(s * s for s in sizes)) // 2


@dataclass(frozen=True)
class LinePartition:
    line: AffineLine
    parts: tuple[tuple[int, ...], ...]


class LineIndex(Protocol):
    def line_ids(self) -> Iterable[int]: ...
    def lines_at(self, v: int) -> Iterable[int]: ...
    def line_points(self, line_id: int) -> list[int]: ...
    def line_mask(self, line_id: int) -> int: ...


class MomentLayer:
    """One layer: its line family, the random partition of every line, and the graph.

    ``points[i]`` lists line ``i`` with its parts laid out contiguously, in the
    order given by ``sizes``.
    """

    def __init__(self, q: int, lam: int, k: int, points: np.ndarray, graph: Graph):
        self.q, self.lam, self.k = q, lam, k
        self.points = points
        self.sizes = part_sizes(q, k)
        self.bounds = np.concatenate([[0], np.cumsum(self.sizes)])
        self.graph = graph
        self._rows: list[list[int]] | None = None
        self._masks: dict[int, int] = {}

    @property
    def n(self) -> int:
        return self.q ** 3

    @property
    def num_lines(self) -> int:
        return self.points.shape[0]

    # LineIndex interface
    def line_ids(self) -> range:
        return range(self.num_lines)

    def lines_at(self, v: int) -> list[int]:
        return lines_through_point(self.q, self.lam, v).tolist()

    def line_points(self, line_id: int) -> list[int]:
        if self._rows is None:
            self._rows = self.points.tolist()
        return self._rows[line_id]

    def line_mask(self, line_id: int) -> int:
        m = self._masks.get(line_id)
        if m is None:
            m = mask_of(self.line_points(line_id))
            self._masks[line_id] = m
        return m

    def release_caches(self) -> None:
        self._rows = None
        self._masks.clear()

    def line_parts(self, line_id: int) -> list[int]:
        row = self.line_points(line_id)
        b = self.bounds
        return [mask_of(row[b[j]:b[j + 1]]) for j in range(self.k)]

    def line_of(self, u: int, v: int) -> int | None:
        return line_of_pair(self.q, self.lam, u, v)

    def partition(self, line_id: int) -> LinePartition:
        q = self.q
        alpha, rest = divmod(line_id, q * q)
        line = AffineLine(Slope(q, self.lam, alpha + 1), FieldPoint(0, rest // q, rest % q, q))
        row = self.points[line_id].tolist()
        b = self.bounds
        return LinePartition(line, tuple(tuple(sorted(row[b[j]:b[j + 1]])) for j in range(self.k)))


def _layer_graph(points: np.ndarray, sizes: tuple[int, ...], n: int) -> Graph:
    adj = [0] * n
    b = np.concatenate([[0], np.cumsum(sizes)]).tolist()
    spans = list(zip(b[:-1], b[1:]))
    for row in points.tolist():
        parts = [row[s:e] for s, e in spans]
        pmasks = [mask_of(p) for p in parts]
        full = 0
        for m in pmasks:
            full |= m
        for part, m in zip(parts, pmasks):
            other = full ^ m
            for v in part:
                adj[v] |= other
    return Graph(n, tuple(adj))


def build_moment_layer(q: int, lam: int, k: int, rng: np.random.Generator) -> MomentLayer:
    """Shuffle each line's points independently and cut them into parts."""
    pts = line_point_array(q, lam)
    pts = rng.permuted(pts, axis=1)
    return MomentLayer(q, lam, k, pts, _layer_graph(pts, part_sizes(q, k), q ** 3))


@dataclass
class MomentConstruction:
    k: int
    r: int
    q: int
    seed: int
    layers: list[MomentLayer]

    @property
    def n(self) -> int:
        return self.q ** 3

    @property
    def pattern(self) -> ColourPattern:
        return ColourPattern(tuple(layer.graph for layer in self.layers))


def build_moment_pattern(k: int, r: int, seed: int, q: int | None = None, check: bool = False) -> MomentConstruction:
    """Build ``r`` layers on ``q^3`` points, ``q`` the least prime ``>= k^2 r`` unless given.

    Layers use ``lam = 1..r``. With ``check`` the postconditions (edge-disjoint,
    each layer ``K_{k+1}``-free) are verified before returning.
    """
    if q is None:
        q = least_admissible_prime(k, r)
    if r > q - 1:
        raise ValueError(f"F_{q} has only {q - 1} nonzero scalars, need {r} layers")
    layers = [build_moment_layer(q, lam, k, substream(seed, "moment", lam)) for lam in range(1, r + 1)]
    out = MomentConstruction(k, r, q, seed, layers)
    if check:
        out.pattern  # raises PatternError on a shared edge
        for layer in layers:
            if not clique_free_exact(layer.graph, layer, k):
                raise AssertionError(f"layer {layer.lam} contains K_{k + 1}")
    return out


def _line_is_multipartite(g: Graph, line_mask: int, parts: list[int]) -> bool:
    for pm in parts:
        want = line_mask ^ pm
        for v in iter_bits(pm):
            if g.adj[v] & line_mask != want:
                return False
    return True


def clique_free_exact(layer: Graph, line_index: LineIndex, k: int) -> bool:
    """Exact ``K_{k+1}``-freeness of a layer built from lines.

    First checks that every edge lies on a line of ``line_index`` and that the
    common neighbourhood of every edge stays on that edge's line, so any clique
    is confined to one line (violations raise :class:`StructuralError`). Then
    looks for ``K_{k+1}`` line by line.
    """
    adj = layer.adj
    for v in range(layer.n):
        nbrs = adj[v]
        if not nbrs:
            continue
        nset = set(iter_bits(nbrs))
        covered: set[int] = set()
        for lid in line_index.lines_at(v):
            on = [u for u in line_index.line_points(lid) if u in nset]
            if not on:
                continue
            covered.update(on)
            off = nbrs ^ (nbrs & line_index.line_mask(lid))
            for u in on:
                # N(u) & N(v) is symmetric in (u, v): check each edge once
                if u > v and adj[u] & off:
                    raise StructuralError(
                        f"edge ({v}, {u}) has a common neighbour off its line {lid}"
                    )
        if len(covered) != len(nset):
            u = min(nset - covered)
            raise StructuralError(f"edge ({v}, {u}) lies on no line of the family")
    parts_of = getattr(line_index, "line_parts", None)
    for lid in line_index.line_ids():
        lm = line_index.line_mask(lid)
        if parts_of is not None:
            parts = [p for p in parts_of(lid) if p]
            if _line_is_multipartite(layer, lm, parts):
                if len(parts) > k:
                    return False
                continue
        if has_clique(layer, k + 1, within=lm) is not None:
            return False
    return True


class ExplicitLineIndex:
    """A line index given as explicit vertex lists (for hand-built layers)."""

    def __init__(self, lines: list[Iterable[int]]):
        self.lines = [tuple(sorted(set(line))) for line in lines]
        self._at: dict[int, list[int]] = {}
        for lid, line in enumerate(self.lines):
            for v in line:
                self._at.setdefault(v, []).append(lid)

    def line_ids(self) -> range:
        return range(len(self.lines))

    def lines_at(self, v: int) -> list[int]:
        return self._at.get(v, [])

    def line_points(self, line_id: int) -> list[int]:
        return list(self.lines[line_id])

    def line_mask(self, line_id: int) -> int:
        return mask_of(self.lines[line_id])


def per_line_turan(layer: MomentLayer) -> bool:
    """Each line carries exactly the complete multipartite graph of its partition, nothing else."""
    expected = set(layer.sizes)
    g = layer.graph
    for lid in layer.line_ids():
        parts = layer.line_parts(lid)
        if {p.bit_count() for p in parts} - expected:
            return False
        lm = 0
        for p in parts:
            lm |= p
        if not _line_is_multipartite(g, lm, parts):
            return False
    return g.num_edges == layer.num_lines * turan_edge_count(layer.sizes)


def failure_exponent(k: int, r: int, q: int) -> float:
    """``q^3 (ln r / r + 1/r + ln k - 3k/4)``; negative means the union bound is below 1."""
    if k < 3 or r < 3:
        raise ValueError("need k >= 3 and r >= 3")
    if q < k * k * r:
        raise ValueError(f"need q >= k^2 r = {k * k * r}")
    return q ** 3 * (log(r) / r + 1 / r + log(k) - 0.75 * k)


@dataclass
class CriticalCertificate:
    n: int
    r: int
    k: int
    q: int | None
    lams: list[int]
    seed: int
    samples: int
    edge_disjointness: bool = False
    shared_edges: int = 0
    per_line_turan: bool | None = None
    clique_free: bool | None = None
    clique_free_method: str = ""
    subsets_sampled: list[int] = field(default_factory=list)
    subsets_containing_Kk: list[int] = field(default_factory=list)
    counterexample: dict | None = None
    elapsed: float = 0.0

    @property
    def clean(self) -> bool:
        exact_ok = self.edge_disjointness and self.clique_free is True and self.per_line_turan is not False
        return exact_ok and self.subsets_sampled == self.subsets_containing_Kk and self.samples > 0

    def to_dict(self, deterministic: bool = False) -> dict:
        d = asdict(self)
        d["clean"] = self.clean
        if deterministic:
            d.pop("elapsed")
        return d


def _subset_hits_line_clique(layer: MomentLayer, mask: np.ndarray) -> bool:
    hit = mask[layer.points]
    starts = layer.bounds[:-1]
    per_part = np.logical_or.reduceat(hit, starts, axis=1)
    return bool(per_part.all(axis=1).any())


def check_subset(p: ColourPattern, layer: int, subset: Iterable[int], k: int,
                 lines: MomentLayer | None = None) -> bool:
    """Whether ``subset`` (of size at least ``floor(n/r)``) spans a ``K_k`` in layer ``layer`` (0-based)."""
    subset = sorted(set(subset))
    need = p.n // p.r
    if len(subset) < need:
        raise ValueError(f"subset has {len(subset)} vertices, fewer than floor(n/r) = {need}")
    if lines is not None:
        mask = np.zeros(p.n, dtype=bool)
        mask[subset] = True
        return _subset_hits_line_clique(lines, mask)
    return has_clique(p.layers[layer], k, within=mask_of(subset)) is not None


def verify_critical_sampled(
    p: ColourPattern,
    k: int,
    samples: int,
    seed: int,
    lines: list[MomentLayer] | None = None,
    cert: CriticalCertificate | None = None,
) -> CriticalCertificate:
    """Refutation test of ``alpha_k < n/r``: every sampled ``floor(n/r)``-subset should span a ``K_k``.

    With ``lines`` the check per subset uses the line structure (a subset spans
    a ``K_k`` iff some line has all ``k`` parts hit); otherwise it runs the
    generic clique search. Counts are raw; nothing is claimed beyond them.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    t0 = time.perf_counter()
    n, r = p.n, p.r
    m = n // r
    if cert is None:
        cert = CriticalCertificate(n, r, k, None, [], seed, samples)
    cert.samples = samples
    cert.subsets_sampled, cert.subsets_containing_Kk = [], []
    for i, g in enumerate(p.layers):
        hits = 0
        for s in range(samples):
            rng = substream(seed, "critical", i, s)
            chosen = rng.choice(n, size=m, replace=False)
            if lines is not None:
                mask = np.zeros(n, dtype=bool)
                mask[chosen] = True
                found = _subset_hits_line_clique(lines[i], mask)
            else:
                found = has_clique(g, k, within=mask_from_array(chosen, n)) is not None
            if found:
                hits += 1
            elif cert.counterexample is None:
                cert.counterexample = {"layer": i + 1, "sample": s, "subset": sorted(chosen.tolist())}
        cert.subsets_sampled.append(samples)
        cert.subsets_containing_Kk.append(hits)
    cert.elapsed += time.perf_counter() - t0
    return cert


def certify_moment(con: MomentConstruction, samples: int, seed: int | None = None) -> CriticalCertificate:
    """Run every exact check on a construction plus the sampled critical check."""
    t0 = time.perf_counter()
    k = con.k
    seed = con.seed if seed is None else seed
    cert = CriticalCertificate(con.n, con.r, k, con.q, [layer.lam for layer in con.layers], seed, samples)
    graphs = [layer.graph for layer in con.layers]
    shared = 0
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            shared += graphs[i].common_edges(graphs[j])
    cert.shared_edges = shared
    cert.edge_disjointness = shared == 0
    cert.per_line_turan = all(per_line_turan(layer) for layer in con.layers)
    cert.clique_free = all(clique_free_exact(layer.graph, layer, k) for layer in con.layers)
    cert.clique_free_method = "edge line-confinement + per-line multipartite check"
    cert.elapsed = time.perf_counter() - t0
    if not cert.edge_disjointness:
        return cert
    return verify_critical_sampled(con.pattern, k, samples, seed, lines=con.layers, cert=cert)


def moment_report(con: MomentConstruction, cert: CriticalCertificate, deterministic: bool = False) -> dict:
    return {
        "schema": 1,
        "k": con.k,
        "r": con.r,
        "q": con.q,
        "n": con.n,
        "seed": con.seed,
        "lines_per_layer": [layer.num_lines for layer in con.layers],
        "part_sizes": list(part_sizes(con.q, con.k)),
        "layer_edges": [layer.graph.num_edges for layer in con.layers],
        "failure_exponent": (failure_exponent(con.k, con.r, con.q)
                             if con.k >= 3 and con.r >= 3 and con.q >= con.k * con.k * con.r else None),
        "certificate": cert.to_dict(deterministic),
    }
