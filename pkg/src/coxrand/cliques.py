"""Maximal clique enumeration over bitmask adjacency (Bron-Kerbosch with pivoting)."""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import CliqueBudgetExceeded
from .graph import mask_members


def maximal_cliques(adj: Sequence[int], budget: int | None = None) -> Iterator[int]:
    """Yield every maximal clique as a bitmask.

    ``adj[v]`` is the neighbour bitmask of ``v`` (without ``v`` itself).
    Tomita-style pivot: branch only on candidates outside the pivot's
    neighbourhood, the pivot maximising ``|P & N(u)|`` over ``P | X``.
    Raises ``CliqueBudgetExceeded`` after ``budget`` cliques.
    """
    n = len(adj)
    if n == 0:
        return
    count = 0
    stack = [(0, (1 << n) - 1, 0)]
    while stack:
        r, p, x = stack.pop()
        if not p:
            if not x:
                count += 1
                if budget is not None and count > budget:
                    raise CliqueBudgetExceeded(f"more than {budget} maximal cliques")
                yield r
            continue
        px = p | x
        best, pivot_nbrs = -1, 0
        for u in mask_members(px):
            c = (p & adj[u]).bit_count()
            if c > best:
                best, pivot_nbrs = c, adj[u]
        branch = p & ~pivot_nbrs
        for v in mask_members(branch):
            bit = 1 << v
            stack.append((r | bit, p & adj[v], x & adj[v]))
            p &= ~bit
            x |= bit


def clique_number(adj: Sequence[int]) -> int:
    best = 0
    for c in maximal_cliques(adj):
        best = max(best, c.bit_count())
    return best
