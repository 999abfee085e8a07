"""Slow, independent reference implementations used only by the tests.

Finiteness here comes from the cosine (Tits) bilinear form rather than the
diagram catalog: a Coxeter system is finite iff its form is positive
definite, and a connected diagram is affine iff the form is positive
semidefinite and singular.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations, product

import numpy as np

from coxrand.graph import INF, LabelledGraph

EIG_TOL = 1e-9


def cosine_form(graph: LabelledGraph) -> np.ndarray:
    n = graph.n
    b = np.eye(n)
    for u in range(n):
        for v in range(u + 1, n):
            m = graph.label(u, v)
            b[u, v] = b[v, u] = -1.0 if m == INF else -math.cos(math.pi / m)
    return b


def _members(mask):
    return [v for v in range(mask.bit_length()) if mask >> v & 1]


class SubsetTable:
    """Per vertex subset (bitmask): finite? irreducible affine?  Built by brute force."""

    def __init__(self, graph: LabelledGraph):
        self.graph = graph
        n = self.n = graph.n
        form = cosine_form(graph)
        self.min_eig = {0: math.inf}
        for k in range(1, n + 1):
            subsets = list(combinations(range(n), k))
            mats = np.stack([form[np.ix_(s, s)] for s in subsets])
            lows = np.linalg.eigvalsh(mats)[:, 0]
            for s, low in zip(subsets, lows):
                self.min_eig[sum(1 << v for v in s)] = float(low)
        self.diag = [sum(1 << w for w in range(n) if w != v and graph.label(v, w) != 2)
                     for v in range(n)]
        self.two = [sum(1 << w for w in range(n) if w != v and graph.label(v, w) == 2)
                    for v in range(n)]

    def finite(self, mask: int) -> bool:
        return self.min_eig[mask] > EIG_TOL

    def connected(self, mask: int) -> bool:
        if not mask:
            return False
        start = mask & -mask
        seen, frontier = start, start
        while frontier:
            nxt = 0
            for v in _members(frontier):
                nxt |= self.diag[v]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen == mask

    def irreducible_affine(self, mask: int) -> bool:
        return self.connected(mask) and abs(self.min_eig[mask]) <= EIG_TOL


def oracle_is_finite(graph: LabelledGraph, subset) -> bool:
    subset = sorted(subset)
    if not subset:
        return True
    form = cosine_form(graph)[np.ix_(subset, subset)]
    return float(np.linalg.eigvalsh(form)[0]) > EIG_TOL


def oracle_is_hyperbolic(graph: LabelledGraph) -> bool:
    """Moussong's two conditions checked over every subset and every disjoint pair."""
    table = SubsetTable(graph)
    n = graph.n
    full = (1 << n) - 1
    for mask in range(1, full + 1):
        if mask.bit_count() >= 3 and table.irreducible_affine(mask):
            return False
    for s in range(1, full + 1):
        if table.finite(s):
            continue
        rest = full & ~s
        t = rest
        while t:
            if not table.finite(t) and all(table.two[u] >> v & 1
                                           for u in _members(s) for v in _members(t)):
                return False
            t = (t - 1) & rest
    return True


def oracle_is_fc(graph: LabelledGraph) -> bool:
    table = SubsetTable(graph)
    for mask in range(1, 1 << graph.n):
        vs = _members(mask)
        if all(graph.label(u, v) != INF for u, v in combinations(vs, 2)) and not table.finite(mask):
            return False
    return True


def oracle_nerve_faces(graph: LabelledGraph) -> set:
    table = SubsetTable(graph)
    return {tuple(_members(m)) for m in range(1, 1 << graph.n) if table.finite(m)}


# ---------------------------------------------------------------------------
# pattern counting by exhaustive enumeration
# ---------------------------------------------------------------------------

def _req_ok(req, label) -> bool:
    matches = getattr(req, "matches", None)
    return matches(label) if matches else req == label


def brute_automorphisms(pattern) -> int:
    k = pattern.k
    return sum(1 for perm in permutations(range(k))
               if all(pattern.req(perm[i], perm[j]) == pattern.req(i, j)
                      for i, j in combinations(range(k), 2)))


def brute_ordered_count(graph: LabelledGraph, pattern) -> int:
    k = pattern.k
    pairs = list(combinations(range(k), 2))
    total = 0
    for subset in combinations(range(graph.n), k):
        for tup in permutations(subset):
            if all(_req_ok(pattern.req(i, j), graph.label(tup[i], tup[j])) for i, j in pairs):
                total += 1
    return total


def brute_count(graph: LabelledGraph, pattern) -> int:
    ordered = brute_ordered_count(graph, pattern)
    b = brute_automorphisms(pattern)
    assert ordered % b == 0
    return ordered // b


def brute_moments(pattern, probs: dict, n: int) -> tuple[Fraction, Fraction]:
    """Exact ``E[X]`` and ``E[X^2]`` of the ordered count by summing over every labelling.

    ``probs`` maps each label (including ``INF``) to a Fraction; labels with
    zero probability may be omitted.
    """
    labels = [m for m, p in probs.items() if p]
    pairs = list(combinations(range(n), 2))
    e1 = e2 = Fraction(0)
    for assignment in product(labels, repeat=len(pairs)):
        weight = Fraction(1)
        for m in assignment:
            weight *= probs[m]
        g = LabelledGraph.from_edges(n, [(u, v, m) for (u, v), m in zip(pairs, assignment)])
        x = brute_ordered_count(g, pattern)
        e1 += weight * x
        e2 += weight * x * x
    return e1, e2
