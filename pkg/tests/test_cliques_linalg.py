from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from coxrand.cliques import clique_number, maximal_cliques
from coxrand.errors import CliqueBudgetExceeded
from coxrand.graph import mask_members
from coxrand.linalg import dense_columns, rank_exact, rank_mod_p

PRIMES = (1_000_003, 1_000_033)


def adjacency_masks(g: nx.Graph, n: int) -> list[int]:
    masks = [0] * n
    for u, v in g.edges():
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


@given(st.integers(0, 14), st.floats(0, 1), st.integers(0, 10**6))
def test_maximal_cliques_match_networkx(n, p, seed):
    g = nx.gnp_random_graph(n, p, seed=seed)
    ours = sorted(tuple(mask_members(c)) for c in maximal_cliques(adjacency_masks(g, n)))
    theirs = sorted(tuple(sorted(c)) for c in nx.find_cliques(g)) if n else []
    assert ours == theirs
    if n:
        assert clique_number(adjacency_masks(g, n)) == max(len(c) for c in theirs)


def test_clique_budget():
    g = nx.complete_multipartite_graph(*([3] * 6))  # Moon-Moser graph: 3^6 maximal cliques
    adj = adjacency_masks(nx.convert_node_labels_to_integers(g), g.number_of_nodes())
    assert sum(1 for _ in maximal_cliques(adj)) == 3 ** 6
    with pytest.raises(CliqueBudgetExceeded):
        list(maximal_cliques(adj, budget=100))


def fraction_rank(matrix) -> int:
    """Plain Gaussian elimination over Q."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32 - 1), st.integers(-3, 3))
def test_rank_exact_matches_fraction_elimination(r, c, seed, low):
    rng = np.random.default_rng(seed)
    m = rng.integers(low, 4, size=(r, c))
    if seed % 3 == 0 and c > 1:
        m[:, -1] = 2 * m[:, 0] - m[:, 1 % c]  # force a dependency
    cols = dense_columns(m.tolist())
    expected = fraction_rank(m.tolist())
    assert rank_exact(cols) == expected
    for p in PRIMES:
        assert rank_mod_p(cols, p) == expected


def test_rank_large_entries_stay_exact():
    # Hilbert-like integer matrix: full rank, entries grow under naive elimination
    n = 8
    m = [[(i + j + 1) ** 3 + (i == j) for j in range(n)] for i in range(n)]
    assert rank_exact(dense_columns(m)) == fraction_rank(m)


def test_rank_of_empty_and_zero():
    assert rank_exact([]) == 0
    assert rank_exact([{}, {}]) == 0
    assert rank_mod_p([{0: 3}], 3) == 0
