"""Triangle-free layers with small independence number, carved out of ``K_n``.

Each layer is sampled edge by edge with probability ``p = c1 / sqrt(n)`` and
then repaired by local resampling: a triangle gets its three edges redrawn,
and an independent set of size ``m`` gets the host edges inside it redrawn.
The layer is accepted once it is triangle-free and its exact independence
number is below ``m``; the next layer is carved from what is left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import ceil, exp, lgamma, log, log1p, sqrt

from .cliques import BudgetExhausted, has_clique, k_independence_number
from .graph import ColourPattern, Graph, iter_bits
from .rng import substream

C_BIG = 1000.0
C1 = 0.25
C2 = 0.05
EXACT_ALPHA_LIMIT = 120


def log_binom(n: float, m: float) -> float:
    return lgamma(n + 1) - lgamma(m + 1) - lgamma(n - m + 1)


@dataclass(frozen=True)
class LLLParams:
    """Local Lemma parameters for ``n`` vertices and ``r`` colours (``y`` kept as ``log y``)."""

    n: int
    r: int
    C: float = C_BIG
    c1: float = C1
    c2: float = C2

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise ValueError("need n >= 1 and r >= 1")
        if not (self.p > 0 and self.x < 1):
            raise ValueError("parameters out of range")

    @property
    def p(self) -> float:
        return self.c1 / sqrt(self.n)

    @property
    def m(self) -> int:
        return ceil(self.n / self.r)

    @property
    def q_edges(self) -> float:
        m = self.m
        return m * (m - 1) / 2 / (2 * self.r)

    @property
    def x(self) -> float:
        return self.c2 * self.n ** -1.5

    @property
    def log_y(self) -> float:
        return -log_binom(self.n, self.m)


def _n_log1m_inv(log_count: float) -> float:
    # N * log(1 - 1/N) for N = exp(log_count), stable for huge N
    if log_count > 30:
        return -1.0 - 0.5 * exp(-log_count)
    big_n = exp(log_count)
    if big_n <= 1:
        return float("-inf")
    return big_n * log1p(-1.0 / big_n)


@dataclass(frozen=True)
class Feasibility:
    ineq1: bool
    ineq2: bool
    margin1: float
    margin2: float
    params: LLLParams

    def to_dict(self) -> dict:
        return {"ineq1": self.ineq1, "ineq2": self.ineq2,
                "log_margin1": self.margin1, "log_margin2": self.margin2,
                "p": self.params.p, "m": self.params.m, "q_edges": self.params.q_edges}


def lll_feasibility(n: int, r: int) -> Feasibility:
    """Evaluate both Local Lemma conditions in log space.

    Triangle events: ``p^3 <= x (1-x)^{3n} (1-y)^{C(n,m)}``.
    Independent-set events: ``2 (1-p)^{C(m,2)/2} <= y (1-x)^{C(m,2) n} (1-y)^{C(n,m)}``.
    Margins are ``log(rhs) - log(lhs)``; nonnegative means the inequality holds.
    """
    if n < r or r < 2:
        raise ValueError("need n >= r >= 2")
    prm = LLLParams(n, r)
    p, x, m = prm.p, prm.x, prm.m
    pairs = m * (m - 1) / 2
    lc = log_binom(n, m)
    tail = _n_log1m_inv(lc)
    lhs1 = 3 * log(p)
    rhs1 = log(x) + 3 * n * log1p(-x) + tail
    lhs2 = log(2) + pairs / 2 * log1p(-p)
    rhs2 = prm.log_y + pairs * n * log1p(-x) + tail
    return Feasibility(rhs1 >= lhs1, rhs2 >= lhs2, rhs1 - lhs1, rhs2 - lhs2, prm)


class Exhausted(Exception):
    def __init__(self, message: str, stats: dict):
        super().__init__(message)
        self.stats = stats


@dataclass
class CarveResult:
    layer: Graph
    remainder: Graph
    alpha: int
    alpha_exact: bool
    resamples: int
    p: float
    default_regime: bool


def _find_triangle(adj: list[int]) -> tuple[int, int, int] | None:
    for u, row in enumerate(adj):
        for v in iter_bits(row >> (u + 1)):
            v += u + 1
            common = row & adj[v]
            if common:
                return u, v, (common & -common).bit_length() - 1
    return None


def carve_layer(
    host: Graph,
    m: int,
    seed: int,
    alpha_budget: int | None = None,
    max_resamples: int = 200_000,
    p: float | None = None,
    exact_limit: int = EXACT_ALPHA_LIMIT,
    allow_inexact: bool = False,
    tag: int = 0,
) -> CarveResult:
    """Find a triangle-free subgraph of ``host`` with independence number below ``m``.

    Raises :class:`Exhausted` after ``max_resamples`` local resampling steps.
    Above ``exact_limit`` vertices the independence number is only a lower
    bound and success additionally needs ``allow_inexact``.
    """
    n = host.n
    if m < 2:
        raise ValueError("m must be at least 2")
    if n > exact_limit and not allow_inexact:
        raise ValueError(f"n = {n} exceeds the exact-alpha limit {exact_limit}; pass allow_inexact")
    default_regime = True
    if p is None:
        p = C1 / sqrt(n) if n else 0.5
        if p > 1:
            p, default_regime = 0.5, False
    else:
        default_regime = False
    p = min(max(p, 0.0), 1.0)
    rng = substream(seed, "carve", tag)
    host_adj = host.adj

    def draw(u: int, v: int) -> bool:
        return bool(rng.random() < p)

    adj = [0] * n
    for u, v in host.edges():
        if draw(u, v):
            adj[u] |= 1 << v
            adj[v] |= 1 << u

    def redraw(u: int, v: int) -> None:
        bit_u, bit_v = 1 << u, 1 << v
        if draw(u, v):
            adj[u] |= bit_v
            adj[v] |= bit_u
        else:
            adj[u] &= ~bit_v
            adj[v] &= ~bit_u

    resamples = 0
    best_alpha = n
    while True:
        tri = _find_triangle(adj)
        if tri is None:
            g = Graph(n, tuple(adj))
            try:
                ind = k_independence_number(g, 2, alpha_budget)
                exact = ind.exact
            except BudgetExhausted as exc:
                ind, exact = exc.partial, False
            best_alpha = min(best_alpha, ind.size)
            if ind.size < m and (exact or allow_inexact):
                return CarveResult(g, host.difference(g), ind.size, exact, resamples, p, default_regime)
            bad = [(a, b) for a, b in combinations(ind.witness[:m], 2) if host_adj[a] >> b & 1]
            if not bad and ind.size >= m:
                raise Exhausted(
                    "host has an independent set of size m; no subgraph can avoid it",
                    {"resamples": resamples, "best_alpha": best_alpha, "m": m},
                )
            for a, b in bad:
                redraw(a, b)
        else:
            u, v, w = tri
            for a, b in ((u, v), (u, w), (v, w)):
                redraw(a, b)
        resamples += 1
        if resamples >= max_resamples:
            raise Exhausted(
                f"no valid layer after {resamples} resamples",
                {"resamples": resamples, "best_alpha": best_alpha, "m": m},
            )


@dataclass
class LayerReport:
    edges: int
    triangle_free: bool
    alpha: int
    alpha_exact: bool
    resamples: int


@dataclass
class PackingResult:
    n: int
    r: int
    m: int
    seed: int
    pattern: ColourPattern
    layers: list[LayerReport] = field(default_factory=list)
    p: float = 0.0
    default_regime: bool = True

    @property
    def success(self) -> bool:
        return all(l.triangle_free and l.alpha < self.n / self.r for l in self.layers)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "r": self.r,
            "m": self.m,
            "seed": self.seed,
            "p": self.p,
            "default_regime": self.default_regime,
            "success": self.success,
            "resamples": sum(l.resamples for l in self.layers),
            "layers": [
                {"edges": l.edges, "triangle_free": l.triangle_free, "alpha": l.alpha,
                 "alpha_exact": l.alpha_exact, "resamples": l.resamples}
                for l in self.layers
            ],
        }


def pack_triangle_free(
    n: int,
    r: int,
    seed: int,
    m: int | None = None,
    alpha_budget: int | None = None,
    max_resamples: int = 200_000,
    p: float | None = None,
    allow_inexact: bool = False,
) -> PackingResult:
    """Carve ``r`` edge-disjoint triangle-free layers from ``K_n``, each with ``alpha < n/r``.

    ``m`` defaults to ``ceil(n/r)``, the smallest set size every layer must
    hit with an edge. Raises :class:`Exhausted` naming the failing layer.
    """
    if r < 1 or n < r:
        raise ValueError("need n >= r >= 1")
    if m is None:
        m = ceil(n / r)
    host = Graph.complete(n)
    layers: list[Graph] = []
    reports: list[LayerReport] = []
    used_p, regime = 0.0, True
    for i in range(r):
        try:
            res = carve_layer(host, m, seed, alpha_budget, max_resamples, p,
                              allow_inexact=allow_inexact, tag=i)
        except Exhausted as exc:
            exc.stats["layer"] = i + 1
            raise Exhausted(f"layer {i + 1}: {exc}", exc.stats) from None
        assert has_clique(res.layer, 3) is None
        layers.append(res.layer)
        reports.append(LayerReport(res.layer.num_edges, True, res.alpha, res.alpha_exact, res.resamples))
        host = res.remainder
        used_p, regime = res.p, regime and res.default_regime
    return PackingResult(n, r, m, seed, ColourPattern(tuple(layers)), reports, used_p, regime)
