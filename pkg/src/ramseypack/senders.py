"""Signal senders: verification of candidates and gadget assembly.

A positive (negative) sender for ``(r, K_h)`` is a graph that has an
``r``-edge-colouring with no monochromatic ``K_h``, and in every such
colouring its two signal edges get the same (different) colours.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product
from pathlib import Path

from .cliques import _clique_search
from .formats import FormatError, _Lines, _read_edges
from .graph import ColourPattern, Graph, GraphError

log = logging.getLogger(__name__)

Edge = tuple[int, int]


def _norm(e: Edge) -> Edge:
    u, v = e
    return (u, v) if u < v else (v, u)


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    @classmethod
    def parse(cls, s: str) -> Polarity:
        s = s.strip().lower()
        if s in ("positive", "pos", "+"):
            return cls.POSITIVE
        if s in ("negative", "neg", "-"):
            return cls.NEGATIVE
        raise ValueError(f"unknown polarity {s!r}")


@dataclass(frozen=True)
class SenderCandidate:
    graph: Graph
    e: Edge
    f: Edge
    polarity: Polarity
    r: int = 2
    h: int = 3

    def __post_init__(self):
        object.__setattr__(self, "e", _norm(self.e))
        object.__setattr__(self, "f", _norm(self.f))
        if not isinstance(self.polarity, Polarity):
            object.__setattr__(self, "polarity", Polarity.parse(self.polarity))
        if not self.graph.has_edge(*self.e) or not self.graph.has_edge(*self.f):
            raise GraphError("signal edges must be edges of the graph")
        if self.e == self.f:
            raise GraphError("signal edges must differ")
        if self.r < 1 or self.h < 2:
            raise ValueError("need r >= 1 and h >= 2")

    @property
    def edge_list(self) -> list[Edge]:
        return list(self.graph.edges())

    @property
    def signal_distance(self) -> int | None:
        return edge_distance(self.graph, self.e, self.f)


def _bfs(g: Graph, sources: tuple[int, ...]) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dq = deque()
    for s in sources:
        dist[s] = 0
        dq.append(s)
    while dq:
        v = dq.popleft()
        for w in g.neighbours(v):
            if dist[w] is None:
                dist[w] = dist[v] + 1
                dq.append(w)
    return dist


def edge_distance(g: Graph, e: Edge, f: Edge) -> int | None:
    """Minimum shortest-path length between an endpoint of ``e`` and one of ``f``; None if disconnected."""
    dist = _bfs(g, e)
    ds = [dist[x] for x in f if dist[x] is not None]
    return min(ds) if ds else None


class Outcome(str, Enum):
    VERIFIED = "VerifiedSender"
    ARROWS = "ArrowsH"
    BOTH = "BothBehavioursPossible"
    WRONG_POLARITY = "WrongPolarity"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class SenderVerdict:
    """``same`` / ``different``: H-free colourings (aligned with ``edge_list``) with the signal edges agreeing / not."""

    outcome: Outcome
    signal_distance: int | None
    same: tuple[int, ...] | None = None
    different: tuple[int, ...] | None = None
    nodes: int = 0
    exhaustive: bool = True

    @property
    def verified(self) -> bool:
        return self.outcome is Outcome.VERIFIED

    def to_dict(self) -> dict:
        return {"outcome": self.outcome.value, "signal_distance": self.signal_distance,
                "witness_same": list(self.same) if self.same else None,
                "witness_different": list(self.different) if self.different else None,
                "nodes": self.nodes, "exhaustive": self.exhaustive}


def has_mono_clique(c: SenderCandidate, colouring: tuple[int, ...]) -> bool:
    """Does the edge colouring (aligned with ``edge_list``) contain a monochromatic ``K_h``?"""
    n, h = c.graph.n, c.h
    adj = [[0] * n for _ in range(c.r)]
    for (u, v), col in zip(c.edge_list, colouring):
        adj[col - 1][u] |= 1 << v
        adj[col - 1][v] |= 1 << u
    return any(_clique_search(a, (1 << n) - 1, h, []) for a in adj)


def replay(c: SenderCandidate, colouring: tuple[int, ...]) -> tuple[bool, bool]:
    """``(has monochromatic K_h, signal edges share a colour)``."""
    edges = c.edge_list
    if len(colouring) != len(edges) or any(not 1 <= x <= c.r for x in colouring):
        raise ValueError("colouring does not match the candidate")
    col = dict(zip(edges, colouring))
    return has_mono_clique(c, colouring), col[c.e] == col[c.f]


def _classify(c: SenderCandidate, same, diff, exhaustive: bool, nodes: int) -> SenderVerdict:
    d = c.signal_distance
    if not exhaustive:
        outcome = Outcome.BOTH if same and diff else Outcome.INCONCLUSIVE
    elif same is None and diff is None:
        outcome = Outcome.ARROWS
    elif same is not None and diff is not None:
        outcome = Outcome.BOTH
    elif (same is not None) == (c.polarity is Polarity.POSITIVE):
        outcome = Outcome.VERIFIED
    else:
        outcome = Outcome.WRONG_POLARITY
    return SenderVerdict(outcome, d, same, diff, nodes, exhaustive)


class _ColouringSearch:
    """Backtracking over edge colourings with the colour of ``e`` fixed to 1."""

    def __init__(self, c: SenderCandidate, budget: int | None):
        self.c = c
        rest = [x for x in c.edge_list if x not in (c.e, c.f)]
        self.order = [c.e, c.f] + rest
        self.pos = {x: i for i, x in enumerate(c.edge_list)}
        self.adj = [[0] * c.graph.n for _ in range(c.r)]
        self.assign = [0] * len(self.order)
        self.budget = budget
        self.nodes = 0
        self.same = None
        self.diff = None

    def _closes_clique(self, col: int, u: int, v: int) -> bool:
        need = self.c.h - 2
        if need == 0:
            return True
        common = self.adj[col][u] & self.adj[col][v]
        return common.bit_count() >= need and _clique_search(self.adj[col], common, need, [])

    def _record(self) -> None:
        out = [0] * len(self.order)
        for x, col in zip(self.order, self.assign):
            out[self.pos[x]] = col + 1
        t = tuple(out)
        if self.assign[0] == self.assign[1]:
            self.same = self.same or t
        else:
            self.diff = self.diff or t

    def run(self, prefix: tuple[int, ...] = ()) -> bool:
        """True when the search finished (exhaustively or with both behaviours found)."""
        self.prefix = prefix
        try:
            self._descend(0)
        except _BudgetHit:
            return False
        return True

    def _descend(self, i: int) -> bool:
        if i == len(self.order):
            self._record()
            return self.same is not None and self.diff is not None
        u, v = self.order[i]
        if i == 0:
            choices = (0,)
        elif i < len(self.prefix):
            choices = (self.prefix[i],)
        else:
            choices = range(self.c.r)
        for col in choices:
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _BudgetHit
            if self._closes_clique(col, u, v):
                continue
            self.assign[i] = col
            self.adj[col][u] |= 1 << v
            self.adj[col][v] |= 1 << u
            done = self._descend(i + 1)
            self.adj[col][u] &= ~(1 << v)
            self.adj[col][v] &= ~(1 << u)
            if done:
                return True
        return False


class _BudgetHit(Exception):
    pass


def _run_prefix(args):
    c, budget, prefix = args
    s = _ColouringSearch(c, budget)
    finished = s.run(prefix)
    return finished, s.same, s.diff, s.nodes


def verify_sender(c: SenderCandidate, budget: int | None = None, workers: int = 1) -> SenderVerdict:
    """Classify ``c`` by searching its ``r``-colourings that avoid a monochromatic ``K_h``.

    Fixing the colour of ``e`` is sound because both sender conditions are
    invariant under permuting colours. Stops early once both behaviours are seen.
    """
    if workers <= 1:
        s = _ColouringSearch(c, budget)
        finished = s.run()
        return _classify(c, s.same, s.diff, finished, s.nodes)
    from concurrent.futures import ProcessPoolExecutor

    depth = min(len(c.edge_list), 1 + max(1, (workers - 1).bit_length()))
    prefixes = [(0,) + t for t in product(range(c.r), repeat=depth - 1)]
    same = diff = None
    nodes, finished = 0, True
    with ProcessPoolExecutor(workers) as ex:
        for fin, s, d, nd in ex.map(_run_prefix, [(c, budget, p) for p in prefixes]):
            finished &= fin
            nodes += nd
            same, diff = same or s, diff or d
    return _classify(c, same, diff, finished or bool(same and diff), nodes)


def verify_sender_naive(c: SenderCandidate) -> SenderVerdict:
    """Reference classifier: every colouring, no symmetry reduction, no pruning."""
    same = diff = None
    edges = c.edge_list
    ie, jf = edges.index(c.e), edges.index(c.f)
    count = 0
    for col in product(range(1, c.r + 1), repeat=len(edges)):
        count += 1
        if has_mono_clique(c, col):
            continue
        if col[ie] == col[jf]:
            same = same or col
        else:
            diff = diff or col
    return _classify(c, same, diff, True, count)


class DistanceTooSmall(ValueError):
    pass


class UnverifiedSender(ValueError):
    pass


@dataclass
class SenderCopy:
    kind: str
    attach_e: Edge
    attach_f: Edge
    vertex_map: list[int]
    layer: int | None = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "e": list(self.attach_e), "f": list(self.attach_f), "vertex_map": self.vertex_map}
        if self.layer is not None:
            d["layer"] = self.layer
        return d


@dataclass
class Assembly:
    graph: Graph
    pattern_vertices: list[int]
    anchors: list[Edge]
    copies: list[SenderCopy] = field(default_factory=list)
    trusted: bool = False

    def layout(self) -> dict:
        return {"schema": 1, "n": self.graph.n, "pattern_vertices": self.pattern_vertices,
                "anchors": [list(a) for a in self.anchors], "trusted": self.trusted,
                "copies": [c.to_dict() for c in self.copies]}


def _check_sender(s: SenderCandidate, want: Polarity, h: int, r: int, trusted: bool, budget: int | None) -> None:
    if s.polarity is not want or s.h != h or s.r != r:
        raise UnverifiedSender(f"expected a {want.value} sender for r={r}, h={h}")
    d = s.signal_distance
    if d is None or d < h:
        raise DistanceTooSmall(f"{want.value} sender has signal distance {d}, need at least {h}")
    if not trusted:
        v = verify_sender(s, budget)
        if not v.verified:
            raise UnverifiedSender(f"{want.value} sender failed verification: {v.outcome.value}")


def _attach(s: SenderCandidate, to_e: Edge, to_f: Edge, next_vertex: int, edges: list[Edge]) -> tuple[list[int], int]:
    fixed = {s.e[0]: to_e[0], s.e[1]: to_e[1], s.f[0]: to_f[0], s.f[1]: to_f[1]}
    vmap = []
    for v in range(s.graph.n):
        if v in fixed:
            vmap.append(fixed[v])
        else:
            vmap.append(next_vertex)
            next_vertex += 1
    edges.extend((vmap[a], vmap[b]) for a, b in s.graph.edges())
    return vmap, next_vertex


def assemble_bel_graph(
    p: ColourPattern,
    pos: SenderCandidate,
    neg: SenderCandidate,
    h: int,
    trusted: bool = False,
    budget: int | None = None,
) -> Assembly:
    """Glue sender copies onto a colour pattern.

    Pattern vertices keep labels ``0..n-1``; anchor edge ``e_i`` follows. Each
    edge ``f`` of layer ``i`` gets a positive copy with signal edges on ``(f, e_i)``
    and each anchor pair gets a negative copy. All other copy vertices are fresh.
    """
    r = p.r
    _check_sender(pos, Polarity.POSITIVE, h, r, trusted, budget)
    _check_sender(neg, Polarity.NEGATIVE, h, r, trusted, budget)
    n = p.n
    anchors = [(n + 2 * i, n + 2 * i + 1) for i in range(r)]
    nxt = n + 2 * r
    edges: list[Edge] = list(anchors)
    copies = []
    for i, layer in enumerate(p.layers):
        for f in layer.edges():
            edges.append(f)
            vmap, nxt = _attach(pos, f, anchors[i], nxt, edges)
            copies.append(SenderCopy("positive", f, anchors[i], vmap, layer=i + 1))
    for i, j in combinations(range(r), 2):
        vmap, nxt = _attach(neg, anchors[i], anchors[j], nxt, edges)
        copies.append(SenderCopy("negative", anchors[i], anchors[j], vmap))
    g = Graph.from_edges(nxt, edges)
    return Assembly(g, list(range(n)), anchors, copies, trusted)


def apex_extension(g: Graph, attach) -> Graph:
    """``g`` plus a new vertex ``g.n`` adjacent exactly to ``attach``."""
    attach = sorted(set(attach))
    if any(not 0 <= v < g.n for v in attach):
        raise GraphError("attach set must lie inside the graph")
    return Graph.from_edges(g.n + 1, list(g.edges()) + [(v, g.n) for v in attach])


def parse_sender(text: str, source: str = "<input>") -> SenderCandidate:
    """Header ``signal e_u e_v f_u f_v polarity r h`` followed by an edge list ``n m`` / ``u v`` lines."""
    lines = _Lines.of(text, source)
    lineno, toks, raw = lines.next("header 'signal e_u e_v f_u f_v polarity r h'")
    if len(toks) != 8 or toks[0] != "signal":
        raise FormatError("expected header 'signal e_u e_v f_u f_v polarity r h'", lineno, 1, source)
    eu, ev, fu, fv = lines.ints(toks[1:5], raw, lineno, 4, "signal edge endpoints")
    try:
        pol = Polarity.parse(toks[5])
    except ValueError as exc:
        raise FormatError(str(exc), lineno, raw.index(toks[5]) + 1, source) from None
    r, h = lines.ints(toks[6:8], raw, lineno, 2, "'r h'")
    lineno, toks, raw = lines.next("graph header 'n m'")
    n, m = lines.ints(toks, raw, lineno, 2, "graph header 'n m'")
    g = Graph.from_edges(n, _read_edges(lines, n, m))
    if not lines.done():
        raise FormatError("trailing data after the last edge", lines.rows[lines.pos][0], 1, source)
    try:
        return SenderCandidate(g, (eu, ev), (fu, fv), pol, r, h)
    except (GraphError, ValueError) as exc:
        raise FormatError(str(exc), None, None, source) from None


def format_sender(c: SenderCandidate) -> str:
    head = f"signal {c.e[0]} {c.e[1]} {c.f[0]} {c.f[1]} {c.polarity.value} {c.r} {c.h}"
    body = [f"{c.graph.n} {c.graph.num_edges}"] + [f"{u} {v}" for u, v in c.graph.edges()]
    return "\n".join([head] + body) + "\n"


def read_sender(path: str | Path) -> SenderCandidate:
    path = Path(path)
    return parse_sender(path.read_text(), str(path))


def search_sender_corpus(
    r: int = 2, h: int = 3, max_vertices: int = 6, max_edges: int = 12, min_distance: int = 1
) -> list[SenderCandidate]:
    """Scan the small-graph atlas for graphs with a verified sender edge pair.

    Each graph's ``K_h``-free colourings are enumerated once and every pair of
    edges at distance ``>= min_distance`` is classified from them. Needs networkx.
    """
    import networkx as nx

    found = []
    for nxg in nx.graph_atlas_g():
        n, m = nxg.number_of_nodes(), nxg.number_of_edges()
        if n > max_vertices or m > max_edges or m < 2 or not nx.is_connected(nxg):
            continue
        g = Graph.from_edges(n, nxg.edges())
        edges = list(g.edges())
        pairs = [(a, b) for a, b in combinations(edges, 2)
                 if (edge_distance(g, a, b) or 0) >= min_distance]
        if not pairs:
            continue
        base = SenderCandidate(g, pairs[0][0], pairs[0][1], Polarity.POSITIVE, r, h)
        rel: dict[tuple[Edge, Edge], set[bool]] = {pq: set() for pq in pairs}
        free = 0
        for col in product(range(1, r + 1), repeat=m):
            if col[0] != 1 or has_mono_clique(base, col):
                continue
            free += 1
            cmap = dict(zip(edges, col))
            for a, b in pairs:
                rel[(a, b)].add(cmap[a] == cmap[b])
        if not free:
            continue
        for (a, b), seen in rel.items():
            if len(seen) == 1:
                pol = Polarity.POSITIVE if True in seen else Polarity.NEGATIVE
                found.append(SenderCandidate(g, a, b, pol, r, h))
    log.info("corpus search found %d sender pairs", len(found))
    return found
