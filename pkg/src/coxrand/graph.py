"""Edge-labelled graphs and the labelled Erdos-Renyi sampler.

A pair of vertices carries either a finite label ``m >= 2`` or ``INF``.
"No edge" and "label infinity" are the same state: the Coxeter group only
sees the matrix entry ``m_ij``.

Internally labels live in a dense symmetric ``int32`` table where ``0``
encodes infinity (so a freshly zeroed table is the all-infinity graph).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import networkx as nx
import numpy as np

from .errors import ConfigError, ScheduleOverflow
from .rng import pair_uniforms

INF = math.inf

#: Largest vertex count accepted for dense label storage.
DENSE_CAP = 5000

_OVERFLOW_TOL = 1e-12


def check_label(label) -> int | float:
    """Normalise a user label to ``int >= 2`` or ``INF``."""
    if isinstance(label, str):
        if label.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        label = int(label)
    if label == INF:
        return INF
    if isinstance(label, float):
        if not label.is_integer():
            raise ConfigError(f"edge label must be an integer >= 2 or inf, got {label!r}")
        label = int(label)
    if not isinstance(label, (int, np.integer)) or label < 2:
        raise ConfigError(f"edge label must be an integer >= 2 or inf, got {label!r}")
    return int(label)


def _encode(label) -> int:
    label = check_label(label)
    return 0 if label == INF else label


def _decode(code: int):
    return INF if code == 0 else int(code)


def label_to_json(label):
    return "inf" if label == INF else int(label)


def _to_mask(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def mask_members(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def members_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class LabelledGraph:
    """Immutable complete edge-labelled graph on vertices ``0..n-1``.

    Parameters
    ----------
    codes : ndarray
        Symmetric integer table; ``0`` means infinity, otherwise ``>= 2``.
        The diagonal is ignored and stored as ``0``.
    origin : sequence of int, optional
        For induced subgraphs, the vertex of the parent graph that each
        local vertex came from.
    """

    __slots__ = ("_codes", "origin", "_mask_cache")

    def __init__(self, codes, origin: Sequence[int] | None = None):
        codes = np.array(codes, dtype=np.int32)
        if codes.ndim != 2 or codes.shape[0] != codes.shape[1]:
            raise ConfigError("label table must be square")
        n = codes.shape[0]
        if n > DENSE_CAP:
            raise ConfigError(f"n={n} exceeds the dense storage cap {DENSE_CAP}")
        np.fill_diagonal(codes, 0)
        if not np.array_equal(codes, codes.T):
            raise ConfigError("label table must be symmetric")
        if np.any((codes == 1) | (codes < 0)):
            raise ConfigError("labels must be >= 2 (or 0 for infinity)")
        codes.setflags(write=False)
        self._codes = codes
        self.origin = tuple(range(n)) if origin is None else tuple(int(v) for v in origin)
        self._mask_cache: dict = {}

    # -- construction -------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple], default=INF) -> "LabelledGraph":
        """Build from ``(u, v, label)`` triples; unspecified pairs get ``default``."""
        codes = np.full((n, n), _encode(default), dtype=np.int32)
        for u, v, lab in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ConfigError(f"bad edge ({u}, {v}) for n={n}")
            codes[u, v] = codes[v, u] = _encode(lab)
        return cls(codes)

    @classmethod
    def complete(cls, n: int, label) -> "LabelledGraph":
        return cls(np.full((n, n), _encode(label), dtype=np.int32))

    @classmethod
    def from_labels(cls, labels: Mapping[tuple[int, int], object], n: int) -> "LabelledGraph":
        return cls.from_edges(n, ((u, v, m) for (u, v), m in labels.items()))

    # -- access -------------------------------------------------------
    @property
    def n(self) -> int:
        return self._codes.shape[0]

    @property
    def codes(self) -> np.ndarray:
        """Read-only label table (``0`` = infinity)."""
        return self._codes

    def label(self, u: int, v: int):
        if u == v:
            raise ValueError("no self-loops: a vertex has no label with itself")
        return _decode(self._codes[u, v])

    def pairs(self):
        """Yield ``(u, v, label)`` over all unordered pairs, u < v."""
        n = self.n
        for u in range(n):
            row = self._codes[u]
            for v in range(u + 1, n):
                yield u, v, _decode(row[v])

    def distinct_labels(self) -> set:
        iu = np.triu_indices(self.n, 1)
        return {_decode(c) for c in np.unique(self._codes[iu])}

    def __eq__(self, other):
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return np.array_equal(self._codes, other._codes)

    def __hash__(self):
        return hash((self.n, self._codes.tobytes()))

    def __repr__(self):
        return f"LabelledGraph(n={self.n})"

    # -- bitmask views (cached; the graph is immutable) ----------------
    def _masks(self, key, make_rows) -> list[int]:
        cached = self._mask_cache.get(key)
        if cached is None:
            rows = make_rows()
            np.fill_diagonal(rows, False)
            cached = [_to_mask(r) for r in rows]
            self._mask_cache[key] = cached
        return cached

    def finite_masks(self) -> list[int]:
        """Per vertex, bitmask of vertices joined by a finite label."""
        return self._masks("finite", lambda: self._codes != 0)

    def diagram_masks(self) -> list[int]:
        """Per vertex, bitmask of Coxeter-diagram neighbours (label != 2)."""
        return self._masks("diagram", lambda: self._codes != 2)

    def label_masks(self, label) -> list[int]:
        code = _encode(label)
        return self._masks(("label", code), lambda: self._codes == code)

    def class_masks(self, labels: frozenset) -> list[int]:
        """Per vertex, neighbours whose label lies in the given label set."""
        codes = sorted(_encode(m) for m in labels)
        return self._masks(("class", tuple(codes)), lambda: np.isin(self._codes, codes))

    # -- serialisation -------------------------------------------------
    def to_json(self) -> dict:
        edges = [[u, v, label_to_json(m)] for u, v, m in self.pairs() if m != INF]
        return {"n": self.n, "edges": edges}

    @classmethod
    def from_json(cls, data) -> "LabelledGraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["n"])
            edges = [(int(u), int(v), check_label(m)) for u, v, m in data.get("edges", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed graph JSON: {exc}") from exc
        return cls.from_edges(n, edges)

    def to_dot(self, include_infinite: bool = False) -> str:
        lines = ["graph G {"]
        lines += [f"  {v};" for v in range(self.n)]
        for u, v, m in self.pairs():
            if m == INF:
                if include_infinite:
                    lines.append(f'  {u} -- {v} [label="inf", style=dashed];')
                continue
            style = ", style=solid" if m == 3 else ""
            lines.append(f"  {u} -- {v} [label={m}{style}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def induced(graph: LabelledGraph, subset: Iterable[int]) -> LabelledGraph:
    """Subgraph on ``subset`` (sorted, re-indexed from 0).

    ``result.origin[i]`` is the vertex of the *root* graph that local
    vertex ``i`` came from, so nested calls compose.
    """
    verts = sorted(set(int(v) for v in subset))
    for v in verts:
        if not 0 <= v < graph.n:
            raise IndexError(f"vertex {v} out of range for n={graph.n}")
    idx = np.array(verts, dtype=np.intp)
    codes = graph.codes[np.ix_(idx, idx)]
    return LabelledGraph(codes, origin=[graph.origin[v] for v in verts])


def label_projection(graph: LabelledGraph, m) -> nx.Graph:
    """Simple graph on the same vertices whose edges are the ``m``-labelled pairs."""
    code = _encode(m)
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    rows, cols = np.nonzero(np.triu(graph.codes == code, 1))
    g.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return g


# ---------------------------------------------------------------------------
# probability schedules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScheduleEntry:
    """``p_m(n) = clamp(coef * n**alpha * ln(n)**beta, 0, 1)``."""

    label: int
    coef: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        lab = check_label(self.label)
        if lab == INF:
            raise ConfigError("schedule entries must use finite labels; p_inf is the residual")
        object.__setattr__(self, "label", lab)
        if not self.coef >= 0:
            raise ConfigError(f"negative coefficient for label {lab}")

    def value(self, n: int) -> float:
        if self.coef == 0:
            return 0.0
        p = self.coef * float(n) ** self.alpha
        if self.beta:
            p *= math.log(n) ** self.beta
        return min(max(p, 0.0), 1.0)


@dataclass(frozen=True)
class ProbabilitySchedule:
    """The family ``{p_m(n)}``; mass not assigned to finite labels goes to infinity."""

    entries: tuple[ScheduleEntry, ...] = field(default_factory=tuple)

    def __post_init__(self):
        entries = tuple(sorted(self.entries, key=lambda e: e.label))
        labels = [e.label for e in entries]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"duplicate labels in schedule: {labels}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def constant(cls, probs: Mapping[int, float]) -> "ProbabilitySchedule":
        return cls(tuple(ScheduleEntry(m, p) for m, p in probs.items()))

    @classmethod
    def power(cls, curves: Mapping[int, tuple]) -> "ProbabilitySchedule":
        """``curves[m] = (coef, alpha[, beta])``."""
        return cls(tuple(ScheduleEntry(m, *c) for m, c in curves.items()))

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(e.label for e in self.entries)

    def entry(self, label) -> ScheduleEntry | None:
        for e in self.entries:
            if e.label == label:
                return e
        return None

    def probabilities(self, n: int) -> dict:
        """Evaluate at ``n``: ``{m: p_m, ..., INF: p_inf}``."""
        if n < 2:
            raise ValueError("schedules are evaluated at n >= 2")
        probs = {e.label: e.value(n) for e in self.entries}
        total = math.fsum(probs.values())
        if total > 1.0 + _OVERFLOW_TOL:
            raise ScheduleOverflow(f"sum of p_m at n={n} is {total:.6g} > 1")
        probs[INF] = max(0.0, 1.0 - total)
        return probs

    def exact_probabilities(self, n: int) -> dict:
        """Probabilities as exact rationals after 12-significant-digit quantisation."""
        probs = self.probabilities(n)
        exact = {m: quantize(p) for m, p in probs.items() if m != INF}
        total = sum(exact.values(), Fraction(0))
        if total > 1:
            raise ScheduleOverflow(f"quantised sum of p_m at n={n} exceeds 1")
        exact[INF] = 1 - total
        return exact

    def big_label_probability(self, n: int, minimum: int = 3) -> float:
        """Aggregate ``p_B``: sum of ``p_m`` over finite ``m >= minimum``."""
        probs = self.probabilities(n)
        return math.fsum(p for m, p in probs.items() if m != INF and m >= minimum)

    # -- JSON -----------------------------------------------------------
    def to_json(self) -> dict:
        return {"entries": [
            {"label": e.label, "c": e.coef, "alpha": e.alpha, "beta": e.beta}
            for e in self.entries
        ]}

    @classmethod
    def from_json(cls, data) -> "ProbabilitySchedule":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            items = data["entries"] if isinstance(data, dict) else data
            return cls(tuple(
                ScheduleEntry(it["label"], float(it.get("c", it.get("coef", 1.0))),
                              float(it.get("alpha", 0.0)), float(it.get("beta", 0.0)))
                for it in items
            ))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed schedule JSON: {exc}") from exc

    @classmethod
    def parse(cls, specs: Iterable[str]) -> "ProbabilitySchedule":
        """Parse compact CLI terms ``LABEL=COEF[,ALPHA[,BETA]]``."""
        entries = []
        for spec in specs:
            try:
                lab, rest = spec.split("=", 1)
                parts = [float(x) for x in rest.split(",")]
                if not 1 <= len(parts) <= 3:
                    raise ValueError(spec)
            except ValueError as exc:
                raise ConfigError(f"bad schedule term {spec!r}; expected LABEL=C[,ALPHA[,BETA]]") from exc
            entries.append(ScheduleEntry(check_label(lab.strip()), *parts))
        return cls(tuple(entries))


def quantize(p: float) -> Fraction:
    return Fraction(f"{p:.12g}")


def evaluate_schedule(schedule: ProbabilitySchedule, n: int) -> dict:
    return schedule.probabilities(n)


@lru_cache(maxsize=4)
def _upper_pairs(n: int):
    rows, cols = np.triu_indices(n, 1)
    rows.setflags(write=False)
    cols.setflags(write=False)
    return rows, cols


def sample(n: int, schedule: ProbabilitySchedule, seed: int) -> LabelledGraph:
    """Draw a labelled graph; each pair's label is an independent categorical draw.

    The draw for pair ``{u, v}`` uses a uniform hashed from
    ``(seed, n, min(u, v), max(u, v))`` only.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > DENSE_CAP:
        raise ConfigError(f"n={n} exceeds the dense storage cap {DENSE_CAP}")
    codes = np.zeros((n, n), dtype=np.int32)
    if n < 2:
        return LabelledGraph(codes)
    probs = schedule.probabilities(n)
    finite = [(m, p) for m, p in probs.items() if m != INF]
    rows, cols = _upper_pairs(n)
    u = pair_uniforms(seed, n, rows, cols)
    cum = np.cumsum([p for _, p in finite])
    values = np.array([m for m, _ in finite] + [0], dtype=np.int32)
    drawn = values[np.searchsorted(cum, u, side="right")]
    codes[rows, cols] = drawn
    codes[cols, rows] = drawn
    return LabelledGraph(codes)
