import numpy as np
import pytest
from hypothesis import settings, strategies as st

from coxrand.graph import INF, LabelledGraph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

LABELS = [2, 3, 4, 5, 6, INF]


@st.composite
def labelled_graphs(draw, min_n=0, max_n=8, labels=tuple(LABELS)):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(labels), min_size=len(pairs), max_size=len(pairs)))
    return LabelledGraph.from_edges(n, [(u, v, m) for (u, v), m in zip(pairs, chosen)])


def random_graph(rng: np.random.Generator, n: int, labels=LABELS, weights=None) -> LabelledGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            edges.append((u, v, labels[rng.choice(len(labels), p=weights)]))
    return LabelledGraph.from_edges(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance criterion, printed after the run whatever the capture mode
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
