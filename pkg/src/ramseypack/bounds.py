"""Closed-form envelopes for ``P_r(k)`` and ``s_r(K_k) = P_r(k-1)``.

Constants the underlying results only prove to exist are configuration
(default 1). They are shown in tables but never enter a consistency check.
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass
from math import ceil, floor, isqrt, log, sqrt
from typing import Literal

from .cliques import has_clique
from .graph import Graph, iter_bits

LOG_DOMAIN_MIN = 16
LLL_CONSTANT = 1000

ModelName = Literal["elementary", "shearer_k2", "dudek_mubayi"]


@dataclass(frozen=True)
class ErdosRogersModel:
    """Lower bound ``f_{k,k+1}(n) >= floor(g(n) sqrt(n))`` for a choice of ``g``.

    ``elementary``: ``g = 1``. ``shearer_k2``: ``g = sqrt(ln n) / 2``.
    ``dudek_mubayi``: ``g = c sqrt(ln n / ln ln n)`` with an unpinned ``c``.
    """

    kind: ModelName = "elementary"
    c: float = 1.0

    def __post_init__(self):
        if self.kind not in ("elementary", "shearer_k2", "dudek_mubayi"):
            raise ValueError(f"unknown model {self.kind!r}")
        if self.c <= 0:
            raise ValueError("c must be positive")

    @property
    def min_n(self) -> int:
        return 1 if self.kind == "elementary" else LOG_DOMAIN_MIN

    def g(self, n: float) -> float:
        if n < self.min_n:
            raise ValueError(f"{self.kind} model needs n >= {self.min_n}, got {n}")
        if self.kind == "elementary":
            return 1.0
        if self.kind == "shearer_k2":
            return 0.5 * sqrt(log(n))
        return self.c * sqrt(log(n) / log(log(n)))

    @property
    def label(self) -> str:
        return self.kind if self.kind != "dudek_mubayi" else f"dudek_mubayi(c={self.c:g})"


ELEMENTARY = ErdosRogersModel()


def f_lower(model: ErdosRogersModel, n: float) -> int:
    """``floor(g(n) * sqrt(n))``."""
    if model.kind == "elementary":
        if n < 1:
            raise ValueError("n must be at least 1")
        return isqrt(int(n)) if float(n).is_integer() else floor(sqrt(n))
    return floor(model.g(n) * sqrt(n))


def _step(model: ErdosRogersModel, n: int) -> int:
    # The elementary bound holds for every n; a log model is used where defined and larger.
    base = isqrt(n)
    if model.kind != "elementary" and n >= model.min_n:
        return max(base, f_lower(model, n))
    return base


def recursive_P_lower(k: int, r_max: int, model: ErdosRogersModel = ELEMENTARY) -> dict[int, int]:
    """Iterate ``P_r >= P_{r-1} + f(P_{r-1})`` from ``P_2 = k^2``, floored by ``(k-1) r + 1``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    table = {2: k * k}
    prev = k * k
    for r in range(3, r_max + 1):
        prev = max(prev + _step(model, prev), (k - 1) * r + 1)
        table[r] = prev
    return table


def g_condition(model: ErdosRogersModel, n_lo: int, n_hi: int, C: float = 1.0) -> tuple[bool, int | None]:
    """Check ``C g(n-1)^2 / n > g(n)^2 - g(n-1)^2 > 0`` for ``n_lo <= n <= n_hi``.

    Returns ``(holds, first_failing_n)``.
    """
    lo = max(n_lo, model.min_n + 1)
    for n in range(lo, n_hi + 1):
        a, b = model.g(n - 1) ** 2, model.g(n) ** 2
        diff = b - a
        if not (C * a / n > diff > 0):
            return False, n
    return True, None


class NotCliqueFree(ValueError):
    pass


def _greedy_min_degree_independent(g: Graph) -> list[int]:
    alive = g.vertex_mask
    out = []
    while alive:
        v = min(iter_bits(alive), key=lambda u: ((g.adj[u] & alive).bit_count(), u))
        out.append(v)
        alive &= ~(g.adj[v] | (1 << v))
    return out


def kfree_set_witness(g: Graph, k: int) -> list[int]:
    """A ``K_k``-free vertex set of size at least ``floor(sqrt(n))`` in a ``K_{k+1}``-free graph.

    A vertex of degree ``>= floor(sqrt n)`` gives its neighbourhood; otherwise a
    greedy independent set has at least ``n / (Delta + 1) >= floor(sqrt n)`` vertices.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    big = has_clique(g, k + 1)
    if big is not None:
        raise NotCliqueFree(f"graph contains K_{k + 1} on {big.vertices}")
    target = isqrt(g.n)
    degs = g.degrees()
    if degs and max(degs) >= target:
        v = max(range(g.n), key=lambda u: (degs[u], -u))
        out = g.neighbours(v)
    else:
        out = _greedy_min_degree_independent(g)
    mask = 0
    for v in out:
        mask |= 1 << v
    assert has_clique(g, k, within=mask) is None and len(out) >= target
    return sorted(out)


@dataclass
class BoundsRow:
    """Envelopes for ``s_r(K_k)``; the ``P`` view is ``P_r(k-1)``."""

    r: int
    k: int
    p_k: int
    lower_trivial: int
    lower_simple: int
    lower_recursive: int
    upper_moment: int | None
    upper_k3: int | None
    display_lower_asymptotic: float
    display_upper_general: float | None
    display_upper_general_alt: float | None
    consistent: bool

    @property
    def lower(self) -> int:
        return max(self.lower_trivial, self.lower_simple, self.lower_recursive)


def _display_lower(r: int, k: int, c: float) -> float:
    if r < 2:
        return 0.0
    if k == 3:
        return c * r * r * log(r)
    if r < 3 or log(log(r)) <= 0:
        return float("nan")
    return c * r * r * log(r) / log(log(r))


def bounds_table(
    k: int,
    r_max: int,
    model: ErdosRogersModel = ELEMENTARY,
    c_lower: float = 1.0,
    c_upper: float = 1.0,
    r_min: int = 2,
) -> list[BoundsRow]:
    """Rows ``r = r_min..r_max`` of lower and upper envelopes for ``s_r(K_k)``.

    ``consistent`` compares every rigorous lower bound with ``upper_moment``;
    the ``display_*`` columns carry unpinned constants and are not compared.
    """
    if k < 3 or r_max < 2:
        raise ValueError("need k >= 3 and r_max >= 2")
    pk = k - 1
    rec = recursive_P_lower(pk, r_max, model)
    rows = []
    for r in range(max(r_min, 2), r_max + 1):
        trivial = r * (k - 2) + 1
        simple = pk * r - r + 1  # (k-2) r + 1
        upper_moment = 8 * pk ** 6 * r ** 3
        upper_k3 = ceil(LLL_CONSTANT * r * r * log(r) ** 2) if k == 3 else None
        lr = log(r)
        gen = c_upper * r * r * lr ** (8 * pk * pk) if k >= 4 else None
        gen_alt = c_upper * r * r * (2 * lr) ** (8 * pk * pk) if k >= 4 else None
        lower = max(trivial, simple, rec[r])
        rows.append(BoundsRow(
            r, k, pk, trivial, simple, rec[r], upper_moment, upper_k3,
            _display_lower(r, k, c_lower), gen, gen_alt, lower <= upper_moment,
        ))
    return rows


CSV_COLUMNS = [
    "r", "k", "p_k", "lower_trivial", "lower_simple", "lower_recursive", "upper_moment", "upper_k3",
    "display_lower_asymptotic", "display_upper_general", "display_upper_general_alt", "consistent",
]


def rows_to_csv(rows: list[BoundsRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        d = asdict(row)
        w.writerow(["" if d[c] is None else d[c] for c in CSV_COLUMNS])
    return buf.getvalue()
