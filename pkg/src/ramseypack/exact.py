"""Exhaustive search for the clique packing number ``P_r(k)`` at tiny sizes.

Patterns on ``n`` vertices are enumerated edge by edge in lexicographic
order; each edge is absent or put in one of the ``r`` layers (absent first,
then layers ascending). Layers are kept ``K_{k+1}``-free incrementally and
every complete pattern gets a forcing check.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Literal

from .cliques import BudgetExhausted, _clique_search
from .forcing import Escaped, find_strongly_mono_clique, greedy_escape_colouring, pattern_forces
from .graph import ColourPattern, Graph
from .rng import substream

log = logging.getLogger(__name__)

Canon = Literal["none", "degree-order", "full"]
CANON_LEVELS = ("none", "degree-order", "full")


@dataclass(frozen=True)
class SearchSpec:
    r: int
    k: int
    n_min: int | None = None
    n_max: int = 6
    canon: Canon = "degree-order"
    node_budget: int | None = None
    time_budget: float | None = None
    workers: int = 1

    def __post_init__(self):
        if self.r < 1 or self.k < 1:
            raise ValueError("need r, k >= 1")
        if self.canon not in CANON_LEVELS:
            raise ValueError(f"unknown canonicalization level {self.canon!r}")
        if self.start > self.n_max:
            raise ValueError(f"n_min = {self.start} exceeds n_max = {self.n_max}")

    @property
    def start(self) -> int:
        return (self.k - 1) * self.r + 1 if self.n_min is None else self.n_min


@dataclass
class LevelCertificate:
    n: int
    exhausted: bool
    patterns_enumerated: int = 0
    nodes: int = 0
    pruned_by: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"n": self.n, "exhausted": self.exhausted, "patterns_enumerated": self.patterns_enumerated,
                "nodes": self.nodes, "pruned_by": dict(sorted(self.pruned_by.items()))}


@dataclass(frozen=True)
class Bracket:
    lo: int
    hi: int | None


@dataclass
class ExactResult:
    r: int
    k: int
    value: int | Bracket | None
    witness: ColourPattern | None
    levels: list[LevelCertificate]

    @property
    def exact(self) -> bool:
        return isinstance(self.value, int)

    def to_dict(self) -> dict:
        if isinstance(self.value, Bracket):
            value = {"lo": self.value.lo, "hi": self.value.hi}
        else:
            value = self.value
        out = {"r": self.r, "k": self.k, "exact": self.exact, "value": value,
               "certificates": [c.to_dict() for c in self.levels]}
        if self.witness is not None:
            out["witness"] = [[list(e) for e in g.edges()] for g in self.witness.layers]
        return out


class _Stop(Exception):
    pass


class _Enumerator:
    """Depth-first enumeration of pattern assignments for one ``n``."""

    def __init__(self, n: int, r: int, k: int, canon: Canon, budget: int | None, deadline: float | None):
        self.n, self.r, self.k, self.canon = n, r, k, canon
        self.edges = list(combinations(range(n), 2))
        # index of the edge that completes each row u (its last edge (u, n-1))
        self.row_end = {i: e[0] for i, e in enumerate(self.edges) if e[1] == n - 1}
        self.adj = [[0] * n for _ in range(r)]
        self.deg = [0] * n
        self.colour = [0] * len(self.edges)
        self.budget, self.deadline = budget, deadline
        self.nodes = 0
        self.leaves = 0
        self.pruned: dict[str, int] = {}
        self.seen: set = set()
        self.witness: ColourPattern | None = None

    def _prune(self, why: str) -> None:
        self.pruned[why] = self.pruned.get(why, 0) + 1

    def _makes_big_clique(self, c: int, u: int, v: int) -> bool:
        need = self.k - 1
        if need == 0:
            return True
        common = self.adj[c][u] & self.adj[c][v]
        if common.bit_count() < need:
            return False
        return _clique_search(self.adj[c], common, need, [])

    def _row_ok(self, u: int) -> bool:
        # vertex 0 has maximum union degree; within a block of equal colour
        # towards 0, union degrees do not increase
        if u == 0:
            return True
        if self.deg[u] > self.deg[0]:
            return False
        if u >= 2 and self.colour[u - 2] == self.colour[u - 1] and self.deg[u - 1] < self.deg[u]:
            return False
        return True

    def pattern(self) -> ColourPattern:
        return ColourPattern(tuple(Graph(self.n, tuple(a)) for a in self.adj))

    def _canonical_key(self) -> tuple:
        n, r = self.n, self.r
        best = None
        for perm in permutations(range(n)):
            for cperm in permutations(range(1, r + 1)):
                relabel = (0,) + cperm
                key = [0] * len(self.edges)
                for (a, b), c in zip(self.edges, self.colour):
                    if c:
                        x, y = perm[a], perm[b]
                        if x > y:
                            x, y = y, x
                        key[x * n - x * (x + 1) // 2 + y - x - 1] = relabel[c]
                t = tuple(key)
                if best is None or t < best:
                    best = t
        return best

    def run(self, prefix: tuple[int, ...] = (), depth_limit: int | None = None, sink=None) -> bool:
        """Search below ``prefix``; stop at the first forcing pattern.

        With ``depth_limit`` the search records each valid partial assignment of
        that length into ``sink`` instead of descending further.
        """
        self.prefix, self.depth_limit, self.sink = prefix, depth_limit, sink
        try:
            return self._descend(0, 0)
        except _Stop:
            return True

    def _descend(self, i: int, used: int) -> bool:
        if self.depth_limit is not None and i == self.depth_limit:
            self.sink.append(tuple(self.colour[:i]))
            return False
        if i == len(self.edges):
            return self._leaf()
        u, v = self.edges[i]
        choices = range(self.r + 1) if i >= len(self.prefix) else (self.prefix[i],)
        replay = i < len(self.prefix)
        for c in choices:
            if not replay:
                self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise BudgetExhausted(f"node budget {self.budget} exhausted at n = {self.n}")
            if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
                raise BudgetExhausted(f"time budget exhausted at n = {self.n}")
            if self.canon != "none":
                if c > used + 1:
                    self._prune("colour_order")
                    continue
                if u == 0 and i > 0 and c < self.colour[i - 1]:
                    self._prune("row0_order")
                    continue
            if c and self._makes_big_clique(c - 1, u, v):
                self._prune("clique")
                continue
            self.colour[i] = c
            if c:
                self.adj[c - 1][u] |= 1 << v
                self.adj[c - 1][v] |= 1 << u
                self.deg[u] += 1
                self.deg[v] += 1
            ok = True
            if self.canon != "none" and i in self.row_end and not self._row_ok(self.row_end[i]):
                self._prune("degree_order")
                ok = False
            if ok and self._descend(i + 1, max(used, c)):
                return True
            if c:
                self.adj[c - 1][u] &= ~(1 << v)
                self.adj[c - 1][v] &= ~(1 << u)
                self.deg[u] -= 1
                self.deg[v] -= 1
            self.colour[i] = 0
        return False

    def _leaf(self) -> bool:
        # degree-order only checks rows as they complete; the last vertex's row is empty
        if self.canon != "none" and self.n >= 1 and not self._row_ok(self.n - 1):
            self._prune("degree_order")
            return False
        if self.canon == "full":
            key = self._canonical_key()
            if key in self.seen:
                self._prune("isomorph")
                return False
            self.seen.add(key)
        self.leaves += 1
        p = self.pattern()
        if pattern_forces(p, self.k).forces:
            self.witness = p
            raise _Stop
        return False


def _run_partition(args) -> tuple[int, bool, int, int, dict, list | None]:
    n, r, k, canon, budget, prefix = args
    e = _Enumerator(n, r, k, canon, budget, None)
    found = e.run(prefix)
    wit = [list(g.adj) for g in e.witness.layers] if e.witness is not None else None
    return len(prefix), found, e.leaves, e.nodes, e.pruned, wit


def _search_level(spec: SearchSpec, n: int, deadline: float | None) -> tuple[LevelCertificate, ColourPattern | None]:
    r, k = spec.r, spec.k
    if spec.workers <= 1 or spec.canon == "full":
        e = _Enumerator(n, r, k, spec.canon, spec.node_budget, deadline)
        try:
            found = e.run()
        except BudgetExhausted:
            cert = LevelCertificate(n, False, e.leaves, e.nodes, e.pruned)
            raise BudgetExhausted(f"budget exhausted at n = {n}", cert) from None
        return LevelCertificate(n, not found, e.leaves, e.nodes, e.pruned), e.witness

    from concurrent.futures import ProcessPoolExecutor

    splitter = _Enumerator(n, r, k, spec.canon, None, None)
    prefixes: list[tuple[int, ...]] = []
    depth = min(len(splitter.edges), 3)
    splitter.run(depth_limit=depth, sink=prefixes)
    jobs = [(n, r, k, spec.canon, spec.node_budget, p) for p in prefixes]
    leaves, nodes, pruned = 0, splitter.nodes, dict(splitter.pruned)
    witness = None
    with ProcessPoolExecutor(spec.workers) as ex:
        # results come back in prefix order, so the first success is the sequential one
        for _, found, lv, nd, pr, wit in ex.map(_run_partition, jobs):
            leaves += lv
            nodes += nd
            for key, val in pr.items():
                pruned[key] = pruned.get(key, 0) + val
            if found:
                witness = ColourPattern(tuple(Graph(n, tuple(a)) for a in wit))
                break
    return LevelCertificate(n, witness is None, leaves, nodes, pruned), witness


def compute_P_exact(spec: SearchSpec) -> ExactResult:
    """Smallest ``n`` in ``[n_min, n_max]`` with a forcing ``K_{k+1}``-free pattern.

    Every smaller ``n`` in the range carries an exhaustion certificate. On a
    budget overrun or an empty range the value is a :class:`Bracket`.
    """
    deadline = None if spec.time_budget is None else time.monotonic() + spec.time_budget
    levels: list[LevelCertificate] = []
    for n in range(spec.start, spec.n_max + 1):
        try:
            cert, witness = _search_level(spec, n, deadline)
        except BudgetExhausted as exc:
            levels.append(exc.partial)
            return ExactResult(spec.r, spec.k, Bracket(n, None), None, levels)
        levels.append(cert)
        log.info("n=%d exhausted=%s leaves=%d", n, cert.exhausted, cert.patterns_enumerated)
        if witness is not None:
            check_witness(witness, spec.k)
            return ExactResult(spec.r, spec.k, n, witness, levels)
    return ExactResult(spec.r, spec.k, Bracket(spec.n_max + 1, None), None, levels)


def check_witness(p: ColourPattern, k: int) -> None:
    from .cliques import has_clique

    for i, g in enumerate(p.layers, 1):
        if has_clique(g, k + 1) is not None:
            raise AssertionError(f"witness layer {i} contains K_{k + 1}")
    if not pattern_forces(p, k, use_greedy=False).forces:
        raise AssertionError("witness does not force")


@dataclass
class SimpleBoundCheck:
    r: int
    k: int
    n: int
    exhaustive: bool
    patterns: int
    counterexample: ColourPattern | None = None

    def __bool__(self) -> bool:
        return self.counterexample is None


def _all_patterns(n: int, r: int):
    edges = list(combinations(range(n), 2))

    def rec(i, adj):
        if i == len(edges):
            yield ColourPattern(tuple(Graph(n, tuple(a)) for a in adj))
            return
        u, v = edges[i]
        for c in range(r + 1):
            if c:
                adj[c - 1][u] |= 1 << v
                adj[c - 1][v] |= 1 << u
            yield from rec(i + 1, adj)
            if c:
                adj[c - 1][u] &= ~(1 << v)
                adj[c - 1][v] &= ~(1 << u)

    yield from rec(0, [[0] * n for _ in range(r)])


def _random_pattern(n: int, r: int, rng) -> ColourPattern:
    edges = list(combinations(range(n), 2))
    cols = rng.integers(0, r + 1, size=len(edges))
    layers = [[] for _ in range(r)]
    for e, c in zip(edges, cols):
        if c:
            layers[c - 1].append(e)
    return ColourPattern(tuple(Graph.from_edges(n, es) for es in layers))


def verify_simple_bound(
    r: int, k: int, seed: int = 0, enumerate_limit: int = 200_000, samples: int = 1000
) -> SimpleBoundCheck:
    """Check that every pattern on ``(k-1) r`` vertices has a greedy escape colouring.

    All ``(r+1)^C(n,2)`` patterns are tried when that is at most
    ``enumerate_limit``; otherwise ``samples`` uniformly random ones.
    """
    if r < 1 or k < 2:
        raise ValueError("need r >= 1 and k >= 2")
    n = (k - 1) * r
    total = (r + 1) ** (n * (n - 1) // 2)
    exhaustive = total <= enumerate_limit
    if exhaustive:
        source = _all_patterns(n, r)
    else:
        rng = substream(seed, "simple-bound", r, k)
        source = (_random_pattern(n, r, rng) for _ in range(samples))
    count = 0
    for p in source:
        count += 1
        c = greedy_escape_colouring(p, k)
        if c is None or find_strongly_mono_clique(p, c, k) is not None:
            return SimpleBoundCheck(r, k, n, exhaustive, count, p)
    return SimpleBoundCheck(r, k, n, exhaustive, count)


def brute_force_P_level(n: int, r: int, k: int) -> bool:
    """Naive oracle: does some ``K_{k+1}``-free pattern on ``n`` vertices force? No pruning."""
    from .cliques import has_clique

    for p in _all_patterns(n, r):
        if any(has_clique(g, k + 1) is not None for g in p.layers):
            continue
        if isinstance(pattern_forces(p, k, use_greedy=False), Escaped):
            continue
        return True
    return False
