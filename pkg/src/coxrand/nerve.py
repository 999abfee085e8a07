"""Nerves of Coxeter systems and their rational homology.

The nerve of a labelled graph has a face for every vertex subset that
generates a finite parabolic subgroup.  Finiteness is inherited by subsets,
so faces are enumerated by growing cliques of the finite-label graph in
lexicographic order and pruning as soon as a set becomes infinite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import FaceBudgetExceeded
from .graph import LabelledGraph, mask_members
from .linalg import rank_exact, rank_mod_p
from .recognition import is_finite_mask

DEFAULT_FACE_BUDGET = 2_000_000

Face = tuple  # ascending vertex tuple


class SimplicialComplex:
    """Finite abstract simplicial complex stored by its facets.

    Faces are ascending vertex tuples; ``faces(k)`` lists the
    ``k``-dimensional faces in lexicographic order, which fixes the row and
    column order of every boundary matrix.
    """

    def __init__(self, n: int, facets: Iterable[Sequence[int]]):
        self._set_levels(n, _close_downward({tuple(sorted(f)) for f in facets if len(f)}))

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[Sequence[int]]) -> "SimplicialComplex":
        """Build from a downward-closed face collection."""
        levels: list[set] = []
        for f in faces:
            f = tuple(sorted(f))
            while len(levels) < len(f):
                levels.append(set())
            levels[len(f) - 1].add(f)
        obj = cls.__new__(cls)
        obj._set_levels(n, levels)
        return obj

    def _set_levels(self, n, levels):
        self.n = n
        self._faces = [sorted(level) for level in levels]
        every = set().union(*levels) if levels else set()
        self.facets = sorted(_facets_of(every), key=lambda f: (len(f), f))
        self._index = None

    @property
    def dim(self) -> int:
        return len(self._faces) - 1

    def faces(self, k: int) -> list[Face]:
        if 0 <= k < len(self._faces):
            return self._faces[k]
        return []

    def face_count(self) -> int:
        return sum(len(level) for level in self._faces)

    def face_set(self) -> set:
        return {f for level in self._faces for f in level}

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(level) for k, level in enumerate(self._faces))

    def index(self, k: int) -> dict:
        if self._index is None:
            self._index = {}
        if k not in self._index:
            self._index[k] = {f: i for i, f in enumerate(self.faces(k))}
        return self._index[k]

    def boundary_columns(self, k: int) -> list[dict]:
        """Sparse columns of the boundary map from k-faces to (k-1)-faces."""
        if k <= 0:
            return [{} for _ in self.faces(k)] if k == 0 else []
        rows = self.index(k - 1)
        cols = []
        for f in self.faces(k):
            col = {}
            for i in range(len(f)):
                col[rows[f[:i] + f[i + 1:]]] = -1 if i % 2 else 1
            cols.append(col)
        return cols

    def boundary_matrix(self, k: int) -> list[list[int]]:
        """Dense boundary matrix (rows: (k-1)-faces, columns: k-faces)."""
        cols = self.boundary_columns(k)
        nrows = len(self.faces(k - 1))
        mat = [[0] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, a in col.items():
                mat[i][j] = a
        return mat

    def to_json(self) -> dict:
        return {"n": self.n, "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data) -> "SimplicialComplex":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["n"]), data["facets"])

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self.face_set() == other.face_set()

    def __repr__(self):
        return f"SimplicialComplex(n={self.n}, dim={self.dim}, facets={len(self.facets)})"


def _close_downward(facets: set) -> list[set]:
    levels: list[set] = []
    for f in facets:
        while len(levels) < len(f):
            levels.append(set())
        for k in range(1, len(f) + 1):
            levels[k - 1].update(combinations(f, k))
    return levels


def _facets_of(faces: set) -> set:
    covered = set()
    for f in faces:
        if len(f) > 1:
            for i in range(len(f)):
                covered.add(f[:i] + f[i + 1:])
    return faces - covered


def build_nerve(graph: LabelledGraph, max_dim: int | None = None,
                budget: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
    """Nerve of the Coxeter system on ``graph``.

    With ``max_dim`` only the ``max_dim``-skeleton is built (faces of
    dimension at most ``max_dim``); its homology agrees with the full nerve
    below ``max_dim``.
    """
    finite = graph.finite_masks()
    n = graph.n
    levels: list[list] = []
    count = 0
    limit = None if max_dim is None else max_dim + 1

    def emit(face):
        nonlocal count
        count += 1
        if count > budget:
            raise FaceBudgetExceeded(f"nerve has more than {budget} faces")
        k = len(face) - 1
        while len(levels) <= k:
            levels.append([])
        levels[k].append(face)

    stack = []
    for v in range(n - 1, -1, -1):
        higher = finite[v] & ~((1 << (v + 1)) - 1)
        stack.append(((v,), 1 << v, higher))
    while stack:
        face, mask, cand = stack.pop()
        emit(face)
        if limit is not None and len(face) >= limit:
            continue
        children = []
        for w in mask_members(cand):
            m2 = mask | (1 << w)
            if is_finite_mask(graph, m2):
                higher = cand & finite[w] & ~((1 << (w + 1)) - 1)
                children.append((face + (w,), m2, higher))
        stack.extend(reversed(children))
    return SimplicialComplex.from_faces(n, (f for level in levels for f in level))


def dimension(complex_: SimplicialComplex) -> int:
    """Largest face dimension; ``-1`` for the empty complex."""
    return complex_.dim


@dataclass
class HomologyProfile:
    betti: list[int]
    dim: int
    ranks: list[int] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "dim": self.dim}


def boundary_ranks(complex_: SimplicialComplex, top: int, prime: int | None = None) -> list[int]:
    """``ranks[k] = rank(boundary_k)`` for ``k = 0..top`` (``ranks[0] = 0``)."""
    ranks = [0]
    for k in range(1, top + 1):
        cols = complex_.boundary_columns(k)
        if not cols:
            ranks.append(0)
        elif prime is None:
            ranks.append(rank_exact(cols))
        else:
            ranks.append(rank_mod_p(cols, prime))
    return ranks


def betti_numbers(complex_: SimplicialComplex, max_dim: int | None = None,
                  prime: int | None = None) -> HomologyProfile:
    """Unreduced rational Betti numbers ``b_0..b_top``.

    ``top`` is ``max_dim`` if given, otherwise the complex dimension.  If the
    complex is a truncated skeleton, pass ``max_dim`` strictly below its
    dimension.
    """
    d = complex_.dim
    top = d if max_dim is None else min(max_dim, d)
    if top < 0:
        return HomologyProfile([], d)
    ranks = boundary_ranks(complex_, min(top + 1, d), prime)
    ranks += [0] * (top + 2 - len(ranks))
    betti = [len(complex_.faces(k)) - ranks[k] - ranks[k + 1] for k in range(top + 1)]
    return HomologyProfile(betti, d, ranks)


def flag_complex(n: int, adjacency: Sequence[int], max_dim: int | None = None) -> SimplicialComplex:
    """Clique complex of a bitmask graph (every clique is a face)."""
    faces = []
    stack = [((v,), adjacency[v] & ~((1 << (v + 1)) - 1)) for v in range(n)]
    while stack:
        face, cand = stack.pop()
        faces.append(face)
        if max_dim is not None and len(face) > max_dim:
            continue
        for w in mask_members(cand):
            stack.append((face + (w,), cand & adjacency[w] & ~((1 << (w + 1)) - 1)))
    return SimplicialComplex.from_faces(n, faces)


# ---------------------------------------------------------------------------
# cross-polytope cycle of Z_k
# ---------------------------------------------------------------------------

def zk_vertex(i: int, sign: str, k: int) -> int:
    """Vertex id of ``x_i^+`` (``i``) or ``x_i^-`` (``k + 1 + i``) in ``zk_graph(k)``."""
    return i if sign == "+" else k + 1 + i


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def zk_fundamental_cycle(k: int) -> dict:
    """Signed chain ``sum_sigma (-1)^(#minus) [x_0^s0, ..., x_k^sk]``.

    Keys are ascending vertex tuples of ``zk_graph(k)``; coefficients absorb
    the sign of the permutation that sorts ``(x_0, ..., x_k)``.
    """
    if k < 1:
        raise ValueError("k >= 1")
    chain = {}
    for signs in _sign_vectors(k + 1):
        ordered = [zk_vertex(i, s, k) for i, s in enumerate(signs)]
        coeff = (-1) ** signs.count("-") * _perm_sign(ordered)
        chain[tuple(sorted(ordered))] = coeff
    return chain


def _sign_vectors(length: int):
    if length == 0:
        yield ()
        return
    for rest in _sign_vectors(length - 1):
        yield rest + ("+",)
        yield rest + ("-",)


def apply_boundary(chain: dict) -> dict:
    out: dict = {}
    for face, c in chain.items():
        for i in range(len(face)):
            sub = face[:i] + face[i + 1:]
            out[sub] = out.get(sub, 0) + (-1 if i % 2 else 1) * c
    return {f: c for f, c in out.items() if c}


def is_boundary(complex_: SimplicialComplex, chain: dict) -> bool:
    """Whether a k-chain lies in the image of the (k+1)-boundary (rationally)."""
    if not chain:
        return True
    k = len(next(iter(chain))) - 1
    cols = complex_.boundary_columns(k + 1)
    idx = complex_.index(k)
    vec = {idx[f]: c for f, c in chain.items()}
    return rank_exact(cols + [vec]) == rank_exact(cols)
