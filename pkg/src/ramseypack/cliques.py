"""Exact clique and k-independence search on bitset graphs.

Both searches are branch-and-bound: candidate sets are bitsets and the
upper bound comes from a greedy partition of the candidates (colour
classes for cliques, cliques for k-independent sets).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import CliqueWitness, Graph, iter_bits

# Re-index a graph by descending degree before searching when it is at
# most this large; bigger graphs are searched in their own labelling.
_REORDER_LIMIT = 4096


class BudgetExhausted(Exception):
    """Raised when a search hits its node budget; ``partial`` holds the best result so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self) -> bool:
        self.used += 1
        return self.limit is not None and self.used > self.limit


def _colour_classes(p: int, adj: tuple[int, ...] | list[int]) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of the candidate set ``p``.

    Returns vertices and their colour numbers ordered by non-decreasing colour,
    which is the expansion order used by the clique search.
    """
    order: list[int] = []
    bounds: list[int] = []
    colour = 0
    q = p
    while q:
        colour += 1
        avail = q
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~adj[v]
            avail ^= low
            q ^= low
            order.append(v)
            bounds.append(colour)
    return order, bounds


def _clique_search(adj, p: int, k: int, chosen: list[int]) -> bool:
    need = k - len(chosen)
    if need == 0:
        return True
    if p.bit_count() < need:
        return False
    order, bounds = _colour_classes(p, adj)
    for i in range(len(order) - 1, -1, -1):
        if bounds[i] < need:
            return False
        v = order[i]
        chosen.append(v)
        if _clique_search(adj, p & adj[v], k, chosen):
            return True
        chosen.pop()
        p &= ~(1 << v)
    return False


def has_clique(g: Graph, k: int, within: int | None = None) -> CliqueWitness | None:
    """Return a ``K_k`` in ``g`` (optionally inside the vertex mask ``within``), or None."""
    if k < 1:
        raise ValueError("k must be at least 1")
    cand = g.vertex_mask if within is None else within & g.vertex_mask
    if cand.bit_count() < k:
        return None
    if k == 1:
        return CliqueWitness((next(iter_bits(cand)),))
    adj = g.adj
    # Vertices of degree < k-1 inside the candidate set can never help.
    changed = True
    while changed:
        changed = False
        for v in iter_bits(cand):
            if (adj[v] & cand).bit_count() < k - 1:
                cand &= ~(1 << v)
                changed = True
        if cand.bit_count() < k:
            return None
    for v in iter_bits(cand):
        chosen = [v]
        higher = (cand >> (v + 1)) << (v + 1)
        if _clique_search(adj, adj[v] & higher, k, chosen):
            return CliqueWitness(tuple(sorted(chosen)))
    return None


def _degree_order(g: Graph) -> tuple[tuple[int, ...], list[int]]:
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    pos = [0] * g.n
    for new, old in enumerate(order):
        pos[old] = new
    adj = []
    for old in order:
        row = 0
        for u in iter_bits(g.adj[old]):
            row |= 1 << pos[u]
        adj.append(row)
    return tuple(adj), order


def max_clique(g: Graph, budget: int | None = None) -> tuple[list[int], bool]:
    """Maximum clique by colour-bounded branch and bound.

    Returns ``(vertices, exact)``; ``exact`` is False when the node budget ran out
    and the clique is only the best one found.
    """
    if g.n == 0:
        return [], True
    if g.n <= _REORDER_LIMIT:
        adj, order = _degree_order(g)
    else:
        adj, order = g.adj, list(range(g.n))
    best: list[int] = [0]
    ticker = _Budget(budget)
    out_of_budget = False

    def expand(p: int, chosen: list[int]) -> None:
        nonlocal best, out_of_budget
        if ticker.tick():
            out_of_budget = True
            return
        vs, bounds = _colour_classes(p, adj)
        for i in range(len(vs) - 1, -1, -1):
            if len(chosen) + bounds[i] <= len(best) or out_of_budget:
                return
            v = vs[i]
            chosen.append(v)
            np_ = p & adj[v]
            if np_:
                expand(np_, chosen)
            elif len(chosen) > len(best):
                best = chosen.copy()
            chosen.pop()
            p &= ~(1 << v)

    expand((1 << g.n) - 1, [])
    return sorted(order[v] for v in best), not out_of_budget


@dataclass(frozen=True)
class IndependenceResult:
    """Largest ``K_k``-free vertex set found; ``exact`` says whether it is proven maximum."""

    size: int
    witness: tuple[int, ...]
    exact: bool
    nodes: int


def _clique_cover_bound(cand: int, adj, cap: int) -> int:
    # Greedy partition of the candidates into cliques of G; a K_k-free set
    # takes at most k-1 vertices from each clique.
    total = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        size = 1
        common = adj[v] & cand
        cand ^= low
        while common:
            low = common & -common
            u = low.bit_length() - 1
            size += 1
            cand ^= low
            common &= adj[u]
            common &= ~low
        total += min(size, cap)
    return total


def k_independence_number(g: Graph, k: int, budget: int | None = None) -> IndependenceResult:
    """Exact ``alpha_k(g)``: the largest vertex set spanning no ``K_k``.

    Raises :class:`BudgetExhausted` carrying a lower-bound
    :class:`IndependenceResult` if ``budget`` node expansions are not enough.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if k == 2:
        clique, exact = max_clique(g.complement(), budget)
        result = IndependenceResult(len(clique), tuple(clique), exact, 0)
        if not exact:
            raise BudgetExhausted("independence search ran out of budget", result)
        return result

    if g.n <= _REORDER_LIMIT:
        adj, order = _degree_order(g)
    else:
        adj, order = g.adj, list(range(g.n))
    ticker = _Budget(budget)
    best = 0
    best_set = 0
    out_of_budget = False

    def search(chosen: int, size: int, cand: int) -> None:
        nonlocal best, best_set, out_of_budget
        if ticker.tick():
            out_of_budget = True
            return
        if size > best:
            best, best_set = size, chosen
        if not cand or size + _clique_cover_bound(cand, adj, k - 1) <= best:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        rest = cand ^ low
        nbrs = chosen & adj[v]
        if nbrs.bit_count() < k - 1 or not _clique_search(adj, nbrs, k - 1, []):
            search(chosen | low, size + 1, rest)
        if out_of_budget:
            return
        search(chosen, size, rest)

    search(0, 0, (1 << g.n) - 1)
    witness = tuple(sorted(order[v] for v in iter_bits(best_set)))
    result = IndependenceResult(best, witness, not out_of_budget, ticker.used)
    if out_of_budget:
        raise BudgetExhausted("k-independence search ran out of budget", result)
    return result


def is_k_free(g: Graph, vertices, k: int) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return has_clique(g, k, within=mask) is None
