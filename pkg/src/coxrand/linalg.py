"""Exact rank of sparse integer matrices.

Columns are reduced one at a time against a table of pivot columns keyed by
their lowest nonzero row.  Over the integers the update is fraction-free,
``v <- b*v - a*p`` followed by division by the content (gcd of entries),
which preserves the rational span exactly while keeping entries small.
The modular variant does the same arithmetic in ``GF(prime)`` and serves as
an independent cross-check.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping

SparseVector = dict  # row index -> nonzero entry


def _content(vec: Mapping[int, int]) -> int:
    g = 0
    for a in vec.values():
        g = gcd(g, a)
        if g == 1:
            break
    return g


def rank_exact(columns: Iterable[Mapping[int, int]]) -> int:
    """Rank over Q of the integer matrix with the given sparse columns."""
    pivots: dict[int, dict] = {}
    rank = 0
    for col in columns:
        v = {i: a for i, a in col.items() if a}
        while v:
            low = max(v)
            p = pivots.get(low)
            if p is None:
                g = _content(v)
                if g > 1:
                    v = {i: a // g for i, a in v.items()}
                pivots[low] = v
                rank += 1
                break
            a, b = v[low], p[low]
            g = gcd(a, b)
            a, b = a // g, b // g
            w = {i: b * x for i, x in v.items()}
            for i, y in p.items():
                z = w.get(i, 0) - a * y
                if z:
                    w[i] = z
                else:
                    w.pop(i, None)
            g = _content(w) if w else 1
            v = {i: x // g for i, x in w.items()} if g > 1 else w
    return rank


def rank_mod_p(columns: Iterable[Mapping[int, int]], prime: int) -> int:
    """Rank over GF(prime); equals the rational rank unless prime divides a minor."""
    pivots: dict[int, dict] = {}
    rank = 0
    for col in columns:
        v = {i: a % prime for i, a in col.items() if a % prime}
        while v:
            low = max(v)
            p = pivots.get(low)
            if p is None:
                inv = pow(v[low], -1, prime)
                pivots[low] = {i: (a * inv) % prime for i, a in v.items()}
                rank += 1
                break
            a = v[low]
            for i, y in p.items():
                z = (v.get(i, 0) - a * y) % prime
                if z:
                    v[i] = z
                else:
                    v.pop(i, None)
    return rank


def dense_columns(matrix) -> list[dict]:
    """Sparse columns of a dense (nested list / ndarray) integer matrix."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    return [{i: int(matrix[i][j]) for i in range(rows) if matrix[i][j]} for j in range(cols)]
