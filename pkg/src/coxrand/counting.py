"""Labelled pattern counts: embeddings, symmetry factors and exact moments.

A ``PatternGraph`` assigns a label requirement to *every* pair of its ``k``
vertices.  A requirement is a concrete label (``2``, ``3``, ..., ``INF``) or
a ``LabelClass`` such as "any label >= 4" or "any label at all"; the latter
turns an induced-pattern count into an ordinary subgraph count (e.g. trees
of the 3-labelled graph regardless of the other pairs).

``X`` counts ordered vertex tuples matching the pattern.  The public counts
are unordered: ``X / b`` with ``b`` the number of label-preserving vertex
permutations.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .errors import ConfigError, IndeterminateAsymptotics, PatternTooLarge
from .graph import INF, LabelledGraph, ProbabilitySchedule, check_label, label_to_json, mask_members

_ZERO_TOL = 1e-9


@dataclass(frozen=True)
class LabelClass:
    """A set of admissible labels: ``minimum <= m <= maximum``, plus optionally ``INF``."""

    name: str
    minimum: int = 2
    maximum: int | None = None
    include_inf: bool = False

    def matches(self, label) -> bool:
        if label == INF:
            return self.include_inf
        return label >= self.minimum and (self.maximum is None or label <= self.maximum)

    def __str__(self):
        return self.name


ANY = LabelClass("any", 2, None, True)
FINITE_LABEL = LabelClass("fin", 2, None, False)
BIG = LabelClass("B", 4)     # "B-labelled": any label greater than 3
BIG3 = LabelClass("B3", 3)   # the label >= 3 aggregate


def _matches(req, label) -> bool:
    if isinstance(req, LabelClass):
        return req.matches(label)
    return req == label


def parse_requirement(token):
    if isinstance(token, LabelClass):
        return token
    if isinstance(token, str):
        t = token.strip()
        named = {"any": ANY, "*": ANY, "fin": FINITE_LABEL, "B": BIG, "b": BIG, "B3": BIG3}
        if t in named:
            return named[t]
    return check_label(token)


def requirement_to_json(req):
    return req.name if isinstance(req, LabelClass) else label_to_json(req)


class PatternGraph:
    """Template on ``k`` vertices with a requirement for every pair."""

    def __init__(self, k: int, table: dict, name: str | None = None):
        self.k = k
        self._req = {}
        for i, j in combinations(range(k), 2):
            if (i, j) in table:
                r = table[(i, j)]
            elif (j, i) in table:
                r = table[(j, i)]
            else:
                raise ConfigError(f"pattern pair ({i}, {j}) has no label")
            self._req[(i, j)] = parse_requirement(r)
        self.name = name or "pattern"

    @classmethod
    def from_edges(cls, k: int, edges: Iterable[tuple], default=2, name=None) -> "PatternGraph":
        table = {(i, j): default for i, j in combinations(range(k), 2)}
        for u, v, lab in edges:
            if u == v or not (0 <= u < k and 0 <= v < k):
                raise ConfigError(f"bad pattern edge ({u}, {v})")
            table[(min(u, v), max(u, v))] = lab
        return cls(k, table, name)

    @classmethod
    def from_graph(cls, graph: LabelledGraph, name=None) -> "PatternGraph":
        return cls(graph.n, {(u, v): m for u, v, m in graph.pairs()}, name)

    def req(self, i: int, j: int):
        if i == j:
            raise ValueError("no requirement on the diagonal")
        return self._req[(i, j) if i < j else (j, i)]

    def pairs(self):
        for (i, j), r in self._req.items():
            yield i, j, r

    def label_counts(self) -> dict:
        out: dict = {}
        for _, _, r in self.pairs():
            out[r] = out.get(r, 0) + 1
        return out

    def permuted(self, perm: Sequence[int]) -> "PatternGraph":
        """Pattern with vertex ``i`` renamed ``perm[i]``."""
        return PatternGraph(self.k, {(perm[i], perm[j]): r for i, j, r in self.pairs()}, self.name)

    def to_json(self) -> dict:
        return {"k": self.k, "edges": [[i, j, requirement_to_json(r)] for i, j, r in self.pairs()]}

    @classmethod
    def from_json(cls, data) -> "PatternGraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls.from_edges(int(data["k"]), [tuple(e) for e in data.get("edges", [])],
                                  default=data.get("default", 2), name=data.get("name"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed pattern JSON: {exc}") from exc

    def __repr__(self):
        return f"PatternGraph({self.name!r}, k={self.k})"


# ---------------------------------------------------------------------------
# symmetry factor
# ---------------------------------------------------------------------------

MAX_AUTOMORPHISM_K = 10


def automorphism_count(pattern: PatternGraph) -> int:
    """Number of vertex permutations preserving every pair requirement."""
    k = pattern.k
    if k > MAX_AUTOMORPHISM_K:
        raise PatternTooLarge(f"automorphism search limited to k <= {MAX_AUTOMORPHISM_K}")
    image = [-1] * k
    used = [False] * k

    def extend(i):
        if i == k:
            return 1
        total = 0
        for c in range(k):
            if used[c]:
                continue
            if all(pattern.req(j, i) == pattern.req(image[j], c) for j in range(i)):
                image[i], used[c] = c, True
                total += extend(i + 1)
                used[c] = False
        return total

    return extend(0)


# ---------------------------------------------------------------------------
# embeddings in a concrete graph
# ---------------------------------------------------------------------------

def _requirement_masks(graph: LabelledGraph, req):
    if req is ANY:
        return None
    if isinstance(req, LabelClass):
        present = frozenset(m for m in graph.distinct_labels() if req.matches(m))
        return graph.class_masks(present) if present else [0] * graph.n
    return graph.label_masks(req)


def _weight(req) -> int:
    if req is ANY:
        return 0
    if req == 2 or isinstance(req, LabelClass):
        return 1
    return 2


def search_order(pattern: PatternGraph) -> list[int]:
    """Vertex order that meets selective requirements as early as possible."""
    k = pattern.k
    if k == 0:
        return []
    total = [sum(_weight(pattern.req(i, j)) for j in range(k) if j != i) for i in range(k)]
    order = [max(range(k), key=lambda i: (total[i], -i))]
    while len(order) < k:
        rest = [i for i in range(k) if i not in order]
        order.append(max(rest, key=lambda i: (sum(_weight(pattern.req(i, j)) for j in order),
                                              total[i], -i)))
    return order


def iter_embeddings(graph: LabelledGraph, pattern: PatternGraph) -> Iterator[tuple[int, ...]]:
    """Yield every ordered instance: ``t[i]`` is the graph vertex playing pattern vertex ``i``."""
    k, n = pattern.k, graph.n
    if k > n:
        return
    if k == 0:
        yield ()
        return
    order = search_order(pattern)
    cache = {}

    def masks(req):
        key = req
        if key not in cache:
            cache[key] = _requirement_masks(graph, req)
        return cache[key]

    # constraints[t] = [(s, masks)] for earlier positions s with a non-trivial requirement
    constraints = []
    for t, q in enumerate(order):
        cons = []
        for s in range(t):
            m = masks(pattern.req(q, order[s]))
            if m is not None:
                cons.append((s, m))
        constraints.append(cons)

    full = (1 << n) - 1
    assigned = [0] * k
    used = 0

    def extend(t):
        nonlocal used
        c = full & ~used
        for s, m in constraints[t]:
            c &= m[assigned[s]]
            if not c:
                return
        for v in mask_members(c):
            assigned[t] = v
            if t == k - 1:
                out = [0] * k
                for pos, q in enumerate(order):
                    out[q] = assigned[pos]
                yield tuple(out)
            else:
                used |= 1 << v
                yield from extend(t + 1)
                used &= ~(1 << v)

    yield from extend(0)


def count_ordered(graph: LabelledGraph, pattern: PatternGraph) -> int:
    return sum(1 for _ in iter_embeddings(graph, pattern))


def count_embeddings(graph: LabelledGraph, pattern: PatternGraph) -> int:
    """Number of unordered instances (ordered instances divided by ``b``)."""
    ordered = count_ordered(graph, pattern)
    b = automorphism_count(pattern)
    assert ordered % b == 0
    return ordered // b


# ---------------------------------------------------------------------------
# exact expectations
# ---------------------------------------------------------------------------

def falling(n: int, k: int) -> int:
    return math.perm(n, k) if 0 <= k <= n else 0


def _support(req, labels) -> frozenset:
    return frozenset(m for m in labels if _matches(req, m))


def _pair_probabilities(pattern: PatternGraph, schedule: ProbabilitySchedule, n: int):
    probs = schedule.exact_probabilities(n)
    labels = tuple(probs)

    def prob_of(support):
        return sum((probs[m] for m in support), Fraction(0))

    return probs, labels, prob_of


def expected_count_exact(pattern: PatternGraph, schedule: ProbabilitySchedule, n: int,
                         ordered: bool = False) -> Fraction:
    """``C(n, k) * (k!/b) * prod_pairs p(label)`` as an exact rational."""
    k = pattern.k
    if n < k:
        return Fraction(0)
    if k < 2:
        per_tuple = Fraction(1)
    else:
        _, labels, prob_of = _pair_probabilities(pattern, schedule, n)
        per_tuple = Fraction(1)
        for _, _, r in pattern.pairs():
            per_tuple *= prob_of(_support(r, labels))
    total = falling(n, k) * per_tuple
    return total if ordered else total / automorphism_count(pattern)


def leading_coefficient(pattern: PatternGraph) -> Fraction:
    """Coefficient of ``n^k prod p`` in the expected unordered count as ``n -> inf``."""
    return Fraction(1, automorphism_count(pattern))


@dataclass(frozen=True)
class AsymptoticSignature:
    n_exponent: float
    log_exponent: float
    coefficient: float
    label_exponents: dict = field(compare=False)
    verdict: str  # "->0", "->inf" or "bounded"


def _leading_term(req, schedule: ProbabilitySchedule):
    """(coefficient, alpha, beta) of the leading term of ``p_req(n)``."""
    includes_inf = req == INF or (isinstance(req, LabelClass) and req.include_inf)
    for e in schedule.entries:
        if e.coef > 0 and (e.alpha > 0 or (e.alpha == 0 and e.beta > 0)):
            raise IndeterminateAsymptotics(f"p_{e.label} grows with n and is clamped at 1")
    if includes_inf:
        limit = 1.0 - sum(e.coef for e in schedule.entries
                          if not _matches(req, e.label) and e.alpha == 0 and e.beta == 0)
        if limit <= _ZERO_TOL:
            raise IndeterminateAsymptotics(f"probability of {req} does not tend to a positive constant")
        return limit, 0.0, 0.0
    members = [e for e in schedule.entries if _matches(req, e.label) and e.coef > 0]
    if not members:
        raise ConfigError(f"label {requirement_to_json(req)} has no schedule entry")
    top = max((e.alpha, e.beta) for e in members)
    coef = sum(e.coef for e in members if (e.alpha, e.beta) == top)
    return coef, top[0], top[1]


def asymptotic_signature(pattern: PatternGraph, schedule: ProbabilitySchedule) -> AsymptoticSignature:
    """Leading monomial ``(1/b) n^k prod p_{m_i}(n)`` of the expected count."""
    coef = float(leading_coefficient(pattern))
    n_exp, log_exp = float(pattern.k), 0.0
    for _, _, r in pattern.pairs():
        c, a, b = _leading_term(r, schedule)
        coef *= c
        n_exp += a
        log_exp += b
    counts = {requirement_to_json(r): c for r, c in pattern.label_counts().items()}
    if abs(n_exp) > _ZERO_TOL:
        verdict = "->inf" if n_exp > 0 else "->0"
    elif abs(log_exp) > _ZERO_TOL:
        verdict = "->inf" if log_exp > 0 else "->0"
    else:
        verdict = "bounded"
    n_exp = 0.0 if abs(n_exp) <= _ZERO_TOL else n_exp
    log_exp = 0.0 if abs(log_exp) <= _ZERO_TOL else log_exp
    return AsymptoticSignature(n_exp, log_exp, coef, counts, verdict)


MAX_SECOND_MOMENT_K = 6


@dataclass
class SecondMoment:
    """``E[X^2]`` for the ordered count, split by number of shared vertices."""

    value: Fraction
    mean: Fraction
    strata: dict  # shared vertices l -> {probability monomial key: structure count}
    contributions: dict  # l -> exact contribution

    @property
    def ratio(self) -> Fraction | None:
        return None if self.mean == 0 else self.value / self.mean ** 2

    @property
    def variance(self) -> Fraction:
        return self.value - self.mean ** 2


def second_moment_exact(pattern: PatternGraph, schedule: ProbabilitySchedule, n: int) -> SecondMoment:
    """Exact ``E[X^2]`` by enumerating how two ordered copies can overlap.

    For ``l`` shared vertices, every choice of ``l`` positions in each copy
    and bijection between them defines a union of ``2k - l`` vertices.  The
    joint probability is the product over constrained union pairs of the
    probability of the intersection of the requirements (zero when two
    copies demand different labels on a shared pair), times the number
    ``(n)_{2k-l}`` of vertex tuples realising the union.
    """
    k = pattern.k
    if k > MAX_SECOND_MOMENT_K:
        raise PatternTooLarge(f"second moment limited to k <= {MAX_SECOND_MOMENT_K}")
    if k < 2:
        raise ConfigError("second moment needs a pattern with at least one pair")
    _, labels, prob_of = _pair_probabilities(pattern, schedule, n)
    support = {r: _support(r, labels) for _, _, r in pattern.pairs()}
    prob_memo: dict = {}

    def p(s):
        if s not in prob_memo:
            prob_memo[s] = prob_of(s)
        return prob_memo[s]

    base = {(i, j): support[r] for i, j, r in pattern.pairs()}
    strata: dict = {}
    contributions: dict = {}
    value = Fraction(0)
    for shared in range(k + 1):
        by_prob: dict = {}
        for pos_a in combinations(range(k), shared):
            for pos_b in permutations(range(k), shared):
                # copy B vertex j -> union vertex
                where = {}
                for a, b in zip(pos_a, pos_b):
                    where[b] = a
                nxt = k
                for j in range(k):
                    if j not in where:
                        where[j] = nxt
                        nxt += 1
                cons = dict(base)
                for (i, j), s in base.items():
                    u, v = where[i], where[j]
                    key = (u, v) if u < v else (v, u)
                    cons[key] = cons[key] & s if key in cons else s
                prob = Fraction(1)
                for s in cons.values():
                    prob *= p(s)
                    if not prob:
                        break
                by_prob[prob] = by_prob.get(prob, 0) + 1
        strata[shared] = by_prob
        ways = falling(n, 2 * k - shared)
        contrib = sum((ways * q * c for q, c in by_prob.items()), Fraction(0))
        contributions[shared] = contrib
        value += contrib
    mean = expected_count_exact(pattern, schedule, n, ordered=True)
    return SecondMoment(value, mean, strata, contributions)


@dataclass
class MomentReport:
    b: int
    exact_expectation: Fraction
    asymptotic: AsymptoticSignature | None
    second_moment: Fraction | None = None
    ratio: Fraction | None = None


def moment_report(pattern, schedule, n, second=False) -> MomentReport:
    try:
        sig = asymptotic_signature(pattern, schedule)
    except (IndeterminateAsymptotics, ConfigError):
        sig = None
    rep = MomentReport(automorphism_count(pattern), expected_count_exact(pattern, schedule, n), sig)
    if second:
        sm = second_moment_exact(pattern, schedule, n)
        rep.second_moment, rep.ratio = sm.value, sm.ratio
    return rep


# ---------------------------------------------------------------------------
# pattern catalogs
# ---------------------------------------------------------------------------

def clique(k: int, label=2) -> PatternGraph:
    return PatternGraph.from_edges(k, [], default=label, name=f"clique({k},{requirement_to_json(parse_requirement(label))})")


def triangle(a, b, c) -> PatternGraph:
    """Triangle with labels ``a`` on (0,1), ``b`` on (1,2), ``c`` on (0,2)."""
    name = "triangle(" + ",".join(str(requirement_to_json(parse_requirement(x))) for x in (a, b, c)) + ")"
    return PatternGraph.from_edges(3, [(0, 1, a), (1, 2, b), (0, 2, c)], name=name)


def cycle(k: int, label=3, rest=ANY) -> PatternGraph:
    edges = [(i, (i + 1) % k, label) for i in range(k)]
    return PatternGraph.from_edges(k, edges, default=rest, name=f"cycle({k})")


def path(k: int, label=3, rest=ANY) -> PatternGraph:
    return PatternGraph.from_edges(k, [(i, i + 1, label) for i in range(k - 1)], default=rest,
                                   name=f"path({k})")


def tree(edges: Sequence[tuple[int, int]], label=3, rest=ANY, name=None) -> PatternGraph:
    k = len(edges) + 1
    return PatternGraph.from_edges(k, [(u, v, label) for u, v in edges], default=rest,
                                   name=name or "tree")


def tree_shapes(k: int) -> list[tuple]:
    """Non-isomorphic trees on ``k`` vertices as sorted edge tuples."""
    if k < 1:
        raise ValueError("trees need at least one vertex")
    if k == 1:
        return [()]
    if k > MAX_AUTOMORPHISM_K:
        raise PatternTooLarge(f"tree enumeration limited to k <= {MAX_AUTOMORPHISM_K}")
    return sorted(tuple(sorted(tuple(sorted(e)) for e in t.edges())) for t in nx.nonisomorphic_trees(k))


def trees(k: int, label=3, rest=ANY) -> list[PatternGraph]:
    """Every tree shape on ``k`` vertices with ``label`` edges (``rest`` elsewhere)."""
    return [tree(shape, label, rest, name=f"tree{k}#{i}") for i, shape in enumerate(tree_shapes(k))]


def empty_square() -> PatternGraph:
    """2-labelled 4-cycle 0-1-2-3 whose diagonals are labelled infinity."""
    return PatternGraph.from_edges(4, [(0, 2, INF), (1, 3, INF)], default=2, name="empty_square")


def zk_pattern(k: int) -> PatternGraph:
    from .properties import zk_graph
    return PatternGraph.from_graph(zk_graph(k), name=f"zk({k})")


def adjacent_pair(a, b, rest=ANY) -> PatternGraph:
    """Two edges labelled ``a`` and ``b`` sharing vertex 1; the third pair is ``rest``."""
    return PatternGraph.from_edges(3, [(0, 1, a), (1, 2, b), (0, 2, rest)],
                                   name=f"adjacent({requirement_to_json(parse_requirement(a))},"
                                        f"{requirement_to_json(parse_requirement(b))})")


_CALL = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$")


def _args(text):
    return [a.strip() for a in text.split(",")] if text and text.strip() else []


def named_pattern(spec: str) -> PatternGraph:
    """Resolve a catalog entry such as ``triangle(3,3,3)``, ``clique(4)`` or ``zk(1)``."""
    m = _CALL.match(spec)
    if not m:
        raise ConfigError(f"unknown pattern {spec!r}")
    name, args = m.group(1), _args(m.group(2))
    try:
        if name == "triangle" and len(args) == 3:
            return triangle(*args)
        if name == "clique":
            return clique(int(args[0]), args[1] if len(args) > 1 else 2)
        if name == "cycle":
            return cycle(int(args[0]), args[1] if len(args) > 1 else 3)
        if name == "path":
            return path(int(args[0]), args[1] if len(args) > 1 else 3)
        if name == "adjacent" and len(args) == 2:
            return adjacent_pair(*args)
        if name == "empty_square" and not args:
            return empty_square()
        if name == "zk" and len(args) == 1:
            return zk_pattern(int(args[0]))
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad pattern arguments in {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown pattern {spec!r}; try triangle(a,b,c), clique(k[,m]), "
                      "cycle(k), path(k), adjacent(a,b), empty_square, zk(k)")


def resolve_pattern(spec) -> PatternGraph:
    """Catalog name, JSON text/dict, or an existing pattern."""
    if isinstance(spec, PatternGraph):
        return spec
    if isinstance(spec, dict):
        return PatternGraph.from_json(spec)
    text = str(spec).strip()
    if text.startswith("{"):
        return PatternGraph.from_json(text)
    return named_pattern(text)
