import numpy as np
import pytest
from hypothesis import given, strategies as st

from coxrand.errors import ConfigError
from coxrand.graph import INF, LabelledGraph
from coxrand.recognition import (INDEFINITE_TYPE, CoxeterType, catalog_edges, catalog_instance,
                                 catalog_types, classify, classify_component, diagram, is_finite,
                                 is_finite_mask)

from conftest import labelled_graphs, random_graph
from oracles import SubsetTable


def path_graph(labels):
    edges = [(i, i + 1, m) for i, m in enumerate(labels)]
    return LabelledGraph.from_edges(len(labels) + 1, edges, default=2)


def single_type(g, subset=None):
    res = classify(g, range(g.n) if subset is None else subset)
    assert len(res.components) == 1
    return res.components[0][1]


def T(name):
    return CoxeterType.parse(name)


# -- diagrams --------------------------------------------------------------

def test_diagram_of_right_angled_clique_is_discrete():
    d = diagram(LabelledGraph.complete(4, 2), range(4))
    assert d.edges == () or not d.edges
    assert len(d.components()) == 4


def test_diagram_f4_path():
    d = diagram(path_graph([3, 4, 3]), range(4))
    assert sorted(d.edges) == [(0, 1, 3), (1, 2, 4), (2, 3, 3)]


def test_diagram_infinite_pair():
    d = diagram(LabelledGraph.from_edges(2, [(0, 1, INF)]), [0, 1])
    assert list(d.edges) == [(0, 1, INF)]


def test_diagram_rejects_empty_subset():
    with pytest.raises(ValueError):
        diagram(LabelledGraph.complete(3, 2), [])


# -- component classification ---------------------------------------------

@pytest.mark.parametrize("labels, expected", [
    ([], "A1"),
    ([3, 3], "A3"),
    ([4, 4], "~B2"),
    ([5, 3], "H3"),
    ([3, 5], "H3"),
    ([6, 3], "~G2"),
    ([3, 4, 3], "F4"),
    ([3, 4, 3, 3], "~F4"),
    ([5, 3, 3], "H4"),
    ([4, 3, 4], "~C3"),
    ([3], "A2"),
    ([4], "B2"),
    ([7], "I2(7)"),
    ([INF], "~A1"),
    ([5, 5], None),
    ([7, 3], None),
    ([3, 5, 3], None),
    ([6, 4], None),
    ([INF, 3], None),
])
def test_path_classification(labels, expected):
    t = single_type(path_graph(labels))
    assert t == (INDEFINITE_TYPE if expected is None else T(expected))


def test_triangle_cycle():
    g = LabelledGraph.from_edges(3, [(0, 1, 3), (1, 2, 3), (0, 2, 3)])
    assert single_type(g) == T("~A2")
    g = LabelledGraph.from_edges(3, [(0, 1, 3), (1, 2, 3), (0, 2, 4)])
    assert single_type(g) == INDEFINITE_TYPE


def test_star_d4_and_d4_affine():
    star = LabelledGraph.from_edges(4, [(0, 1, 3), (0, 2, 3), (0, 3, 3)], default=2)
    assert single_type(star) == T("D4")
    big = LabelledGraph.from_edges(5, [(0, i, 3) for i in range(1, 5)], default=2)
    assert single_type(big) == T("~D4")
    bad = LabelledGraph.from_edges(5, [(0, 1, 4)] + [(0, i, 3) for i in range(2, 5)], default=2)
    assert single_type(bad) == INDEFINITE_TYPE


def test_three_vertex_fork_is_a3():
    # a three-vertex "D_3" is just the path A_3
    assert single_type(path_graph([3, 3])) == T("A3")


def test_classify_right_angled_subsets():
    g = LabelledGraph.complete(5, 2)
    res = classify(g, [0, 2, 4])
    assert [t for _, t in res.components] == [T("A1")] * 3
    assert res.overall_finite


def test_classify_infinite_pair_and_f4_affine():
    res = classify(LabelledGraph.from_edges(2, [(0, 1, INF)]), [0, 1])
    assert res.types == [T("~A1")] and not res.overall_finite
    res = classify(path_graph([3, 4, 3, 3]), range(5))
    assert res.types == [T("~F4")] and not res.overall_finite
    assert res.affine_rank3plus_witness == (0, 1, 2, 3, 4)


def test_is_finite_examples():
    assert is_finite(path_graph([3, 4, 3]), range(4))
    tri = LabelledGraph.from_edges(3, [(0, 1, 3), (1, 2, 3), (0, 2, 3)])
    assert not is_finite(tri, range(3))
    g = LabelledGraph.from_edges(3, [(0, 1, INF)], default=2)
    assert not is_finite(g, range(3))
    assert is_finite(g, [0, 2])


def test_components_partition():
    g = LabelledGraph.from_edges(6, [(0, 1, 3), (2, 3, 5), (3, 4, 3)], default=2)
    res = classify(g, range(6))
    parts = sorted(tuple(c) for c, _ in res.components)
    assert parts == [(0, 1), (2, 3, 4), (5,)]
    assert sorted(t.name for t in res.types) == ["A1", "A2", "H3"]


# -- catalog ---------------------------------------------------------------

def test_catalog_examples():
    n, edges = catalog_edges(T("E8"))
    g = catalog_instance(T("E8"))
    assert n == g.n == 8
    labels = [m for _, _, m in g.pairs()]
    assert len(labels) == 28 and labels.count(3) == 7 and labels.count(2) == 21
    g = catalog_instance(T("~C3"))
    assert [g.label(i, i + 1) for i in range(3)] == [4, 3, 4]
    g = catalog_instance(T("I2(7)"))
    assert g.n == 2 and g.label(0, 1) == 7


def test_catalog_round_trip_every_type():
    types = catalog_types()
    assert len(types) == len(set(types))
    for t in types:
        assert single_type(catalog_instance(t)) == t, t.name


@pytest.mark.parametrize("name", ["~B2", "~G2", "~F4", "~E6", "~E7", "~E8", "~D4", "~D5", "~B3",
                                  "~C4", "~A1", "~A4"])
def test_catalog_affine_is_minimal_infinite(name):
    g = catalog_instance(T(name))
    assert not is_finite(g, range(g.n))
    for v in range(g.n):
        assert is_finite(g, [u for u in range(g.n) if u != v])


def test_catalog_agrees_with_cosine_form():
    for t in catalog_types():
        g = catalog_instance(t)
        table = SubsetTable(g) if g.n <= 10 else None
        if table is None:
            continue
        full = (1 << g.n) - 1
        assert table.finite(full) == t.is_finite
        assert table.irreducible_affine(full) == t.is_affine


def test_type_validation_and_names():
    assert CoxeterType.dihedral(3) == T("A2")
    assert CoxeterType.dihedral(4) == T("B2")
    assert CoxeterType.dihedral(INF) == T("~A1")
    assert T("I2(9)").name == "I2(9)"
    for bad in [("A", 0), ("D", 3), ("E", 9), ("H", 5), ("I2", 4)]:
        with pytest.raises(ConfigError):
            CoxeterType.finite(*bad)
    for bad in [("B", 1), ("C", 2), ("D", 3), ("G", 3)]:
        with pytest.raises(ConfigError):
            CoxeterType.affine(*bad)
    for t in catalog_types():
        assert CoxeterType.parse(t.name) == t
        assert t.vertex_count == catalog_edges(t)[0]


# -- properties ------------------------------------------------------------

def test_recognizer_matches_cosine_form_on_random_graphs():
    rng = np.random.default_rng(7)
    for _ in range(400):
        n = int(rng.integers(1, 8))
        g = random_graph(rng, n, labels=[2, 3, 4, 5, 6, 8, INF])
        table = SubsetTable(g)
        for mask in range(1, 1 << n):
            vs = [v for v in range(n) if mask >> v & 1]
            res = classify(g, vs)
            assert res.overall_finite == table.finite(mask)
            assert is_finite_mask(g, mask) == table.finite(mask)
            if table.connected(mask):
                assert res.components[0][1].is_affine == table.irreducible_affine(mask)


def test_downward_closure_of_finiteness():
    rng = np.random.default_rng(11)
    for _ in range(10_000):
        n = int(rng.integers(1, 7))
        g = random_graph(rng, n, labels=[2, 3, 4, 5, INF])
        finite = [is_finite_mask(g, m) for m in range(1 << n)]
        for mask in range(1, 1 << n):
            if finite[mask]:
                assert all(finite[mask & ~(1 << v)] for v in range(n) if mask >> v & 1)


@given(labelled_graphs(min_n=1, max_n=7))
def test_cycles_and_infinite_edges_never_finite(g):
    res = classify(g, range(g.n))
    for comp, t in res.components:
        sub = [(u, v) for u in comp for v in comp if u < v and g.label(u, v) != 2]
        has_cycle = len(sub) >= len(comp)
        has_inf = any(g.label(u, v) == INF for u, v in sub)
        if has_cycle or has_inf:
            assert not t.is_finite
        if has_inf and t.is_affine:
            assert t == T("~A1") and len(comp) == 2


@given(labelled_graphs(min_n=1, max_n=7), st.randoms(use_true_random=False))
def test_classification_permutation_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = LabelledGraph.from_edges(g.n, [(perm[u], perm[v], m) for u, v, m in g.pairs()])
    a = sorted((sorted(perm[v] for v in c), t) for c, t in classify(g, range(g.n)).components)
    b = sorted((sorted(c), t) for c, t in classify(h, range(g.n)).components)
    assert a == b


def test_classify_component_directly():
    d = diagram(LabelledGraph.from_edges(3, [(0, 1, 3), (1, 2, 3), (0, 2, 3)]), range(3))
    assert classify_component(d) == T("~A2")
