"""Recognise irreducible finite and affine Coxeter diagrams.

The Coxeter diagram of a vertex subset joins two vertices whenever their
label is not 2 (an infinity label is a diagram edge too).  Each connected
component is matched against the finite and Euclidean catalogs by a
table-driven recogniser that looks only at degrees, arm lengths and the
label sequence, so no isomorphism search is needed.

Type names are ASCII: ``A3``, ``B4``, ``I2(7)``, ``~A2``, ``~B2``, ``~E8``.
A leading tilde marks the affine (Euclidean) family.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import ConfigError
from .graph import INF, LabelledGraph, mask_members, members_mask

FINITE = "finite"
AFFINE = "affine"
INDEFINITE = "indefinite"

_FINITE_FAMILIES = {"A", "B", "D", "E", "F", "H", "I2"}
_AFFINE_FAMILIES = {"A", "B", "C", "D", "E", "F", "G"}


@dataclass(frozen=True, order=True)
class CoxeterType:
    """Classification verdict for one irreducible diagram.

    ``index`` is the rank subscript (``n`` in ``A_n``, ``~B_n``) or, for
    ``I2``, the dihedral label ``m``.  Only canonical names are valid:
    ``I2(3)`` is ``A2`` and ``I2(4)`` is ``B2``.
    """

    kind: str
    family: str = ""
    index: int = 0

    def __post_init__(self):
        if self.kind == INDEFINITE:
            return
        if self.kind == FINITE:
            ok = _valid_finite(self.family, self.index)
        elif self.kind == AFFINE:
            ok = _valid_affine(self.family, self.index)
        else:
            raise ConfigError(f"unknown Coxeter type kind {self.kind!r}")
        if not ok:
            raise ConfigError(f"invalid Coxeter type {self.kind} {self.family}{self.index}")

    @classmethod
    def finite(cls, family: str, index: int) -> "CoxeterType":
        return cls(FINITE, family, index)

    @classmethod
    def affine(cls, family: str, index: int) -> "CoxeterType":
        return cls(AFFINE, family, index)

    @classmethod
    def dihedral(cls, m) -> "CoxeterType":
        """Type of a single pair labelled ``m`` (canonicalised)."""
        if m == INF:
            return cls(AFFINE, "A", 1)
        if m == 2:
            raise ConfigError("a 2-labelled pair is reducible (A1 x A1)")
        if m == 3:
            return cls(FINITE, "A", 2)
        if m == 4:
            return cls(FINITE, "B", 2)
        return cls(FINITE, "I2", int(m))

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_affine(self) -> bool:
        return self.kind == AFFINE

    @property
    def vertex_count(self) -> int:
        if self.kind == INDEFINITE:
            raise ValueError("indefinite types have no fixed vertex count")
        if self.family == "I2":
            return 2
        return self.index + (1 if self.kind == AFFINE else 0)

    @property
    def name(self) -> str:
        if self.kind == INDEFINITE:
            return "indefinite"
        core = f"I2({self.index})" if self.family == "I2" else f"{self.family}{self.index}"
        return ("~" + core) if self.kind == AFFINE else core

    def __str__(self):
        return self.name

    @classmethod
    def parse(cls, name: str) -> "CoxeterType":
        name = name.strip()
        if name.lower() == "indefinite":
            return cls(INDEFINITE)
        affine = name.startswith("~")
        core = name[1:] if affine else name
        m = re.fullmatch(r"I2\((\d+|inf)\)", core)
        if m and not affine:
            val = m.group(1)
            return cls.dihedral(INF if val == "inf" else int(val))
        m = re.fullmatch(r"([A-H])(\d+)", core)
        if not m:
            raise ConfigError(f"cannot parse Coxeter type {name!r}")
        return cls(AFFINE if affine else FINITE, m.group(1), int(m.group(2)))


INDEFINITE_TYPE = CoxeterType(INDEFINITE)


def _valid_finite(family, k) -> bool:
    return {
        "A": k >= 1,
        "B": k >= 2,
        "D": k >= 4,
        "E": k in (6, 7, 8),
        "F": k == 4,
        "H": k in (3, 4),
        "I2": k >= 5,
    }.get(family, False)


def _valid_affine(family, k) -> bool:
    return {
        "A": k >= 1,
        "B": k >= 2,  # ~B2 is the (4, 4) path
        "C": k >= 3,
        "D": k >= 4,  # ~D4 is the four-armed star
        "E": k in (6, 7, 8),
        "F": k == 4,
        "G": k == 2,
    }.get(family, False)


# ---------------------------------------------------------------------------
# diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoxeterDiagram:
    """Diagram of a vertex subset: edges are the non-2 pairs, with their labels."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, object], ...]

    def adjacency(self) -> dict:
        adj = {v: {} for v in self.vertices}
        for u, v, m in self.edges:
            adj[u][v] = m
            adj[v][u] = m
        return adj

    def components(self) -> list["CoxeterDiagram"]:
        adj = self.adjacency()
        seen = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            cs = set(comp)
            comps.append(CoxeterDiagram(
                tuple(sorted(comp)),
                tuple(e for e in self.edges if e[0] in cs),
            ))
        return comps


def diagram(graph: LabelledGraph, subset: Iterable[int]) -> CoxeterDiagram:
    verts = tuple(sorted(set(int(v) for v in subset)))
    if not verts:
        raise ValueError("diagram of an empty subset")
    codes = graph.codes
    edges = []
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            c = int(codes[u, v])
            if c != 2:
                edges.append((u, v, INF if c == 0 else c))
    return CoxeterDiagram(verts, tuple(edges))


# ---------------------------------------------------------------------------
# component classification
# ---------------------------------------------------------------------------

def _path_order(adj, verts):
    """Vertices of a path diagram from one end to the other."""
    ends = [v for v in verts if len(adj[v]) == 1]
    start = min(ends)
    order, prev = [start], None
    while len(order) < len(verts):
        cur = order[-1]
        nxt = [w for w in adj[cur] if w != prev]
        prev = cur
        order.append(nxt[0])
    return order


def _classify_path(labels: list) -> CoxeterType:
    """Classify a path from its edge-label sequence (>= 2 edges)."""
    k = len(labels) + 1
    rev = labels[::-1]
    if all(m == 3 for m in labels):
        return CoxeterType.finite("A", k)
    for seq in (labels, rev):
        if seq[0] == 4 and all(m == 3 for m in seq[1:]):
            return CoxeterType.finite("B", k)
        if seq[0] == 5 and all(m == 3 for m in seq[1:]) and k in (3, 4):
            return CoxeterType.finite("H", k)
    if labels == [3, 4, 3]:
        return CoxeterType.finite("F", 4)
    if labels in ([4, 4],):
        return CoxeterType.affine("B", 2)
    if k >= 4 and labels[0] == 4 and labels[-1] == 4 and all(m == 3 for m in labels[1:-1]):
        return CoxeterType.affine("C", k - 1)
    if labels in ([6, 3], [3, 6]):
        return CoxeterType.affine("G", 2)
    if labels in ([3, 4, 3, 3], [3, 3, 4, 3]):
        return CoxeterType.affine("F", 4)
    return INDEFINITE_TYPE


def _arms(adj, center):
    """For each neighbour of a branch vertex: (arm length, labels from the centre out)."""
    arms = []
    for first in sorted(adj[center]):
        labels = [adj[center][first]]
        prev, cur = center, first
        while len(adj[cur]) == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            labels.append(adj[cur][nxt])
            prev, cur = cur, nxt
        arms.append((len(labels), labels, len(adj[cur]) == 1))
    return arms


_ONE_BRANCH = {
    (1, 2, 2): CoxeterType.finite("E", 6),
    (1, 2, 3): CoxeterType.finite("E", 7),
    (1, 2, 4): CoxeterType.finite("E", 8),
    (2, 2, 2): CoxeterType.affine("E", 6),
    (1, 3, 3): CoxeterType.affine("E", 7),
    (1, 2, 5): CoxeterType.affine("E", 8),
}


def classify_component(comp: CoxeterDiagram) -> CoxeterType:
    """Classify one connected diagram component."""
    verts = comp.vertices
    size = len(verts)
    if size == 1:
        return CoxeterType.finite("A", 1)
    labels = [m for _, _, m in comp.edges]
    if size == 2:
        return CoxeterType.dihedral(labels[0])
    if INF in labels:
        return INDEFINITE_TYPE
    if len(comp.edges) >= size:
        # contains a cycle; only the all-3 simple cycle (~A_n) is admissible
        adj = comp.adjacency()
        if len(comp.edges) == size and all(len(adj[v]) == 2 for v in verts) \
                and all(m == 3 for m in labels):
            return CoxeterType.affine("A", size - 1)
        return INDEFINITE_TYPE

    adj = comp.adjacency()
    degrees = {v: len(adj[v]) for v in verts}
    if max(degrees.values()) >= 4:
        if size == 5 and max(degrees.values()) == 4 and all(m == 3 for m in labels):
            return CoxeterType.affine("D", 4)
        return INDEFINITE_TYPE
    branches = [v for v in verts if degrees[v] == 3]

    if not branches:
        order = _path_order(adj, verts)
        seq = [adj[a][b] for a, b in zip(order, order[1:])]
        return _classify_path(seq)

    if len(branches) == 1:
        arms = _arms(adj, branches[0])
        lengths = tuple(sorted(a[0] for a in arms))
        if all(m == 3 for m in labels):
            if lengths[0] == 1 and lengths[1] == 1:
                return CoxeterType.finite("D", size)
            return _ONE_BRANCH.get(lengths, INDEFINITE_TYPE)
        # ~B_n: fork at one end, single 4 on the outermost edge of the long arm
        non3 = [m for m in labels if m != 3]
        if non3 == [4] and lengths[0] == 1 and lengths[1] == 1:
            long_arm = max(arms, key=lambda a: (a[0], a[1][-1] == 4))
            if long_arm[1][-1] == 4 and all(m == 3 for m in long_arm[1][:-1]):
                return CoxeterType.affine("B", size - 1)
        return INDEFINITE_TYPE

    if len(branches) == 2 and all(m == 3 for m in labels):
        # ~D_n: two forks joined by a path, each fork carrying two leaves
        for b in branches:
            leaves = [w for w in adj[b] if degrees[w] == 1]
            if len(leaves) != 2:
                return INDEFINITE_TYPE
        if size >= 6:
            return CoxeterType.affine("D", size - 1)
    return INDEFINITE_TYPE


# ---------------------------------------------------------------------------
# whole-subset classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationResult:
    components: tuple[tuple[tuple[int, ...], CoxeterType], ...]

    @property
    def overall_finite(self) -> bool:
        return all(t.is_finite for _, t in self.components)

    @property
    def affine_rank3plus_witness(self) -> tuple[int, ...] | None:
        """Vertices of an affine component with at least 3 vertices, if any."""
        for verts, t in self.components:
            if t.is_affine and len(verts) >= 3:
                return verts
        return None

    @property
    def types(self) -> list[CoxeterType]:
        return [t for _, t in self.components]


def classify(graph: LabelledGraph, subset: Iterable[int]) -> ClassificationResult:
    d = diagram(graph, subset)
    comps = tuple((c.vertices, classify_component(c)) for c in d.components())
    return ClassificationResult(comps)


def is_finite(graph: LabelledGraph, subset: Iterable[int]) -> bool:
    return is_finite_mask(graph, members_mask(subset))


def is_finite_mask(graph: LabelledGraph, mask: int) -> bool:
    """Fast finiteness test for the subset encoded by ``mask``."""
    if mask & (mask - 1) == 0:
        return True
    finite = graph.finite_masks()
    diag = graph.diagram_masks()
    verts = mask_members(mask)
    nontrivial = False
    for v in verts:
        if (mask & ~finite[v]) & ~(1 << v):
            return False  # an infinity pair: infinite dihedral factor
        if diag[v] & mask:
            nontrivial = True
    if not nontrivial:
        return True  # all pairs labelled 2
    # a finite diagram is a forest, so more than |S| - 1 edges is infinite
    edge_count = sum((diag[v] & mask).bit_count() for v in verts) // 2
    if edge_count >= len(verts):
        return False
    d = diagram(graph, verts)
    return all(classify_component(c).is_finite for c in d.components())


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _path_edges(labels, offset=0):
    return [(offset + i, offset + i + 1, m) for i, m in enumerate(labels)]


def _branch_edges(arms):
    """Vertex 0 is the centre; each arm is a list of labels from the centre out."""
    edges, nxt = [], 1
    for arm in arms:
        prev = 0
        for m in arm:
            edges.append((prev, nxt, m))
            prev = nxt
            nxt += 1
    return nxt, edges


def catalog_edges(t: CoxeterType) -> tuple[int, list]:
    """(vertex count, diagram edges) realising ``t``."""
    f, k = t.family, t.index
    if t.kind == FINITE:
        if f == "A":
            return k, _path_edges([3] * (k - 1))
        if f == "B":
            return k, _path_edges([4] + [3] * (k - 2))
        if f == "I2":
            return 2, [(0, 1, k)]
        if f == "H":
            return k, _path_edges([5] + [3] * (k - 2))
        if f == "F":
            return 4, _path_edges([3, 4, 3])
        if f == "D":
            return _branch_edges([[3], [3], [3] * (k - 3)])
        if f == "E":
            return _branch_edges([[3], [3, 3], [3] * (k - 4)])
    elif t.kind == AFFINE:
        if f == "A":
            if k == 1:
                return 2, [(0, 1, INF)]
            return k + 1, _path_edges([3] * k) + [(0, k, 3)]
        if f == "B":
            if k == 2:
                return 3, _path_edges([4, 4])
            return _branch_edges([[3], [3], [3] * (k - 3) + [4]])
        if f == "C":
            return k + 1, _path_edges([4] + [3] * (k - 2) + [4])
        if f == "D":
            if k == 4:
                return _branch_edges([[3], [3], [3], [3]])
            # fork (leaves 0, 1) - path 2 .. k-2 - fork (leaves k-1, k)
            edges = [(0, 2, 3), (1, 2, 3)] + _path_edges([3] * (k - 4), offset=2)
            edges += [(k - 2, k - 1, 3), (k - 2, k, 3)]
            return k + 1, edges
        if f == "E":
            arms = {6: ([3, 3], [3, 3], [3, 3]), 7: ([3], [3, 3, 3], [3, 3, 3]),
                    8: ([3], [3, 3], [3] * 5)}[k]
            return _branch_edges(list(arms))
        if f == "F":
            return 5, _path_edges([3, 4, 3, 3])
        if f == "G":
            return 3, _path_edges([6, 3])
    raise ConfigError(f"no catalog instance for {t.name}")


def catalog_instance(t: CoxeterType) -> LabelledGraph:
    """Labelled graph realising exactly the diagram of ``t`` (other pairs labelled 2)."""
    n, edges = catalog_edges(t)
    return LabelledGraph.from_edges(n, edges, default=2)


def catalog_types(max_index: int = 9, max_dihedral: int = 12) -> list[CoxeterType]:
    """Every supported finite and affine type up to the given rank bound."""
    out = []
    fin = CoxeterType.finite
    aff = CoxeterType.affine
    out += [fin("A", k) for k in range(1, max_index + 1)]
    out += [fin("B", k) for k in range(2, max_index + 1)]
    out += [fin("D", k) for k in range(4, max_index + 1)]
    out += [fin("E", k) for k in (6, 7, 8) if k <= max_index]
    out += [fin("F", 4), fin("H", 3), fin("H", 4)]
    out += [fin("I2", m) for m in range(5, max_dihedral + 1)]
    out += [aff("A", k) for k in range(1, max_index + 1)]
    out += [aff("B", k) for k in range(2, max_index + 1)]
    out += [aff("C", k) for k in range(3, max_index + 1)]
    out += [aff("D", k) for k in range(4, max_index + 1)]
    out += [aff("E", k) for k in (6, 7, 8) if k <= max_index]
    out += [aff("F", 4), aff("G", 2)]
    return out
