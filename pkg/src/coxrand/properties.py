"""Decide FC-type, hyperbolicity, nerve dimension and Z_k patterns on a graph.

Hyperbolicity follows Moussong's characterisation: a Coxeter system is
word-hyperbolic iff it has (a) no irreducible affine parabolic subsystem on
three or more generators and (b) no two disjoint infinite parabolic
subsystems all of whose cross pairs are labelled 2.

Both conditions reduce to *minimal* infinite subsets.  Every proper subset
of an irreducible affine diagram is finite, so (a) looks only at minimal
infinite sets; every infinite set contains a minimal one and the all-2
cross condition passes to subsets, so (b) does too.  Minimal infinite sets
are connected in the Coxeter diagram, hence they are found by growing
connected finite sets one diagram neighbour at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .cliques import maximal_cliques
from .counting import PatternGraph, iter_embeddings
from .errors import PreconditionViolated, SearchBudgetExceeded
from .graph import INF, LabelledGraph, mask_members, members_mask
from .nerve import SimplicialComplex
from .recognition import classify, is_finite_mask

DEFAULT_CLIQUE_BUDGET = 1_000_000
DEFAULT_SEARCH_BUDGET = 2_000_000


def zk_graph(k: int) -> LabelledGraph:
    """The labelled graph ``Z_k`` on ``2k + 2`` vertices.

    Vertex ``i`` is ``x_i^+`` and ``k + 1 + i`` is ``x_i^-``.  The two
    3-labelled arcs ``x_0^+ .. x_k^+`` and ``x_0^- .. x_k^-`` are closed
    into one cycle by ``x_k^+ x_0^-`` and ``x_k^- x_0^+``; antipodal pairs
    ``x_i^+ x_i^-`` are labelled infinity and every other pair 2.
    """
    if k < 1:
        raise ValueError("Z_k needs k >= 1")
    plus = list(range(k + 1))
    minus = [k + 1 + i for i in range(k + 1)]
    edges = []
    for i in range(k):
        edges.append((plus[i], plus[i + 1], 3))
        edges.append((minus[i], minus[i + 1], 3))
    edges.append((plus[k], minus[0], 3))
    edges.append((minus[k], plus[0], 3))
    edges += [(plus[i], minus[i], INF) for i in range(k + 1)]
    return LabelledGraph.from_edges(2 * k + 2, edges, default=2)


# ---------------------------------------------------------------------------
# FC-type and nerve dimension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FcVerdict:
    fc_type: bool
    witness_clique: tuple[int, ...] | None = None


def shrink_infinite(graph: LabelledGraph, mask: int) -> int:
    """Greedily drop vertices while the set stays infinite (yields a minimal infinite set)."""
    for v in mask_members(mask):
        smaller = mask & ~(1 << v)
        if not is_finite_mask(graph, smaller):
            mask = smaller
    return mask


def is_fc_type(graph: LabelledGraph, budget: int = DEFAULT_CLIQUE_BUDGET) -> FcVerdict:
    """Every clique of finite labels generates a finite group?

    Finiteness is inherited by subsets, so only maximal cliques are tested.
    """
    for c in maximal_cliques(graph.finite_masks(), budget):
        if not is_finite_mask(graph, c):
            return FcVerdict(False, tuple(mask_members(shrink_infinite(graph, c))))
    return FcVerdict(True)


def _largest_finite_subset(graph: LabelledGraph, clique: int, floor: int) -> int:
    """Size of the largest finite subset of a finite-label clique (0 if none beats ``floor``)."""
    best = floor
    verts = mask_members(clique)

    def grow(mask, size, rest):
        nonlocal best
        if size > best:
            best = size
        for i, w in enumerate(rest):
            if size + len(rest) - i <= best:
                return
            m2 = mask | (1 << w)
            if is_finite_mask(graph, m2):
                grow(m2, size + 1, rest[i + 1:])

    grow(0, 0, verts)
    return best


def nerve_dimension(graph: LabelledGraph, budget: int = DEFAULT_CLIQUE_BUDGET) -> int:
    """(size of the largest finite-type vertex set) - 1, without building the nerve."""
    best = 0
    for c in maximal_cliques(graph.finite_masks(), budget):
        size = c.bit_count()
        if size <= best:
            continue
        if is_finite_mask(graph, c):
            best = size
        else:
            best = _largest_finite_subset(graph, c, best)
    return best - 1


# ---------------------------------------------------------------------------
# minimal infinite subsets and hyperbolicity
# ---------------------------------------------------------------------------

def iter_minimal_infinite(graph: LabelledGraph, size_cap: int | None = None,
                          budget: int = DEFAULT_SEARCH_BUDGET) -> Iterator[int]:
    """Yield (as bitmasks) every minimal infinite vertex set with at most ``size_cap`` vertices.

    Sets are produced in a deterministic order (by size, then by first
    discovery).  ``budget`` caps the number of connected sets examined.
    """
    n = graph.n
    if size_cap is None:
        size_cap = n
    diag = graph.diagram_masks()
    memo: dict[int, bool] = {}

    def finite(mask):
        r = memo.get(mask)
        if r is None:
            r = memo[mask] = is_finite_mask(graph, mask)
        return r

    seen: set[int] = set()
    level = [1 << v for v in range(n)]
    seen.update(level)
    examined = len(level)
    size = 1
    while level and size < size_cap:
        nxt = []
        for s in level:
            frontier = 0
            for v in mask_members(s):
                frontier |= diag[v]
            frontier &= ~s
            for w in mask_members(frontier):
                t = s | (1 << w)
                if t in seen:
                    continue
                seen.add(t)
                examined += 1
                if examined > budget:
                    raise SearchBudgetExceeded(f"more than {budget} connected subsets examined")
                if finite(t):
                    nxt.append(t)
                elif all(finite(t & ~(1 << u)) for u in mask_members(t)):
                    yield t
        level = nxt
        size += 1


def minimal_infinite_subsets(graph: LabelledGraph, size_cap: int | None = None,
                             budget: int = DEFAULT_SEARCH_BUDGET) -> list[tuple[int, ...]]:
    if size_cap is not None and size_cap < 2:
        raise ValueError("size_cap must be at least 2")
    return [tuple(mask_members(m)) for m in iter_minimal_infinite(graph, size_cap, budget)]


@dataclass(frozen=True)
class AffineWitness:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class JoinWitness:
    s: tuple[int, ...]
    t: tuple[int, ...]


@dataclass(frozen=True)
class HyperbolicityVerdict:
    hyperbolic: bool
    witness: AffineWitness | JoinWitness | None = None


def check_witness(graph: LabelledGraph, witness) -> bool:
    """Re-verify a non-hyperbolicity witness from scratch."""
    if isinstance(witness, AffineWitness):
        if len(witness.vertices) < 3:
            return False
        res = classify(graph, witness.vertices)
        return len(res.components) == 1 and res.components[0][1].is_affine
    if isinstance(witness, JoinWitness):
        s, t = set(witness.s), set(witness.t)
        if not s or not t or s & t:
            return False
        if is_finite_mask(graph, members_mask(s)) or is_finite_mask(graph, members_mask(t)):
            return False
        return all(graph.label(u, v) == 2 for u in s for v in t)
    return False


def is_hyperbolic(graph: LabelledGraph, size_cap: int | None = None,
                  budget: int = DEFAULT_SEARCH_BUDGET) -> HyperbolicityVerdict:
    """Moussong's test with a certificate when the group is not hyperbolic."""
    # affine sets are checked as they are found; joins need the full list
    minimal = []
    for m in iter_minimal_infinite(graph, size_cap, budget):
        minimal.append(m)
        if m.bit_count() >= 3:
            verts = tuple(mask_members(m))
            res = classify(graph, verts)
            if res.components[0][1].is_affine:
                return HyperbolicityVerdict(False, AffineWitness(verts))
    two = graph.label_masks(2)
    by_low: dict[int, list[int]] = {}
    for m in minimal:
        by_low.setdefault((m & -m).bit_length() - 1, []).append(m)
    for s in minimal:
        common = -1
        for v in mask_members(s):
            common &= two[v]
        for low in mask_members(common & ((1 << graph.n) - 1)):
            for t in by_low.get(low, ()):
                if t & ~common == 0:
                    return HyperbolicityVerdict(
                        False, JoinWitness(tuple(mask_members(s)), tuple(mask_members(t))))
    return HyperbolicityVerdict(True)


# ---------------------------------------------------------------------------
# Z_k detection and the retraction onto its nerve
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZkEmbedding:
    """``plus[i]`` / ``minus[i]`` are the graph vertices playing ``x_i^+`` / ``x_i^-``."""

    k: int
    plus: tuple[int, ...]
    minus: tuple[int, ...]
    plus_common_neighbor_free: bool

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.plus + self.minus

    def to_json(self) -> dict:
        return {"k": self.k, "plus": list(self.plus), "minus": list(self.minus),
                "plus_common_neighbor_free": self.plus_common_neighbor_free}


def common_finite_neighbors(graph: LabelledGraph, vertices) -> int:
    """Bitmask of vertices joined by a finite label to every vertex given."""
    finite = graph.finite_masks()
    common = (1 << graph.n) - 1
    for v in vertices:
        common &= finite[v]
    return common


def find_zk(graph: LabelledGraph, k: int, require_no_common_neighbor: bool = False) -> ZkEmbedding | None:
    """First induced copy of ``Z_k`` (optionally with no common neighbour of the ``x_i^+``)."""
    if k < 1:
        raise ValueError("k >= 1")
    if graph.n < 2 * k + 2:
        return None
    pattern = PatternGraph.from_graph(zk_graph(k))
    for emb in iter_embeddings(graph, pattern):
        plus, minus = emb[:k + 1], emb[k + 1:]
        free = common_finite_neighbors(graph, plus) == 0
        if free or not require_no_common_neighbor:
            return ZkEmbedding(k, tuple(plus), tuple(minus), free)
    return None


def retraction_map(graph: LabelledGraph, emb: ZkEmbedding) -> dict[int, int]:
    """Vertex map onto the embedded ``Z_k``: identity on it, else ``v -> x_i^-`` for an
    ``x_i^+`` not finitely joined to ``v`` (smallest such ``i``)."""
    if common_finite_neighbors(graph, emb.plus):
        raise PreconditionViolated("the x_i^+ have a common neighbour")
    finite = graph.finite_masks()
    r = {v: v for v in emb.vertices}
    for v in range(graph.n):
        if v in r:
            continue
        for i, xp in enumerate(emb.plus):
            if not finite[xp] >> v & 1:
                r[v] = emb.minus[i]
                break
    return r


def retraction_check(graph: LabelledGraph, emb: ZkEmbedding,
                     complex_: SimplicialComplex | None = None) -> bool:
    """Verify the retraction sends every nerve face to a face of ``N(Z_k)``.

    With ``complex_`` (the nerve of ``graph``) each facet image is tested
    for finiteness inside the embedded ``Z_k``.  Without it, the check runs
    over finite-label pairs: faces of ``N(Z_k)`` are exactly the sets with
    no antipodal pair, so a face maps to a face iff each of its pairs does.
    """
    r = retraction_map(graph, emb)
    if complex_ is not None:
        for facet in complex_.facets:
            image = members_mask(r[v] for v in facet)
            if not is_finite_mask(graph, image):
                return False
        return True
    antipodal = {(a, b) for a, b in zip(emb.plus, emb.minus)}
    antipodal |= {(b, a) for a, b in antipodal}
    finite = graph.finite_masks()
    for u in range(graph.n):
        for w in mask_members(finite[u] & ~((1 << (u + 1)) - 1)):
            if (r[u], r[w]) in antipodal:
                return False
    return True
