import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cds_forge.graph import build_graph


def path_graph(n, costs=None):
    return build_graph([(i, i + 1) for i in range(n - 1)], costs or [1] * n)


def star_graph(leaves, costs=None):
    return build_graph([(0, i) for i in range(1, leaves + 1)], costs or [1] * (leaves + 1))


def complete_graph(n, costs=None):
    return build_graph([(a, b) for a in range(n) for b in range(a + 1, n)], costs or [1] * n)


def cycle_graph(n, costs=None):
    return build_graph([(i, (i + 1) % n) for i in range(n)], costs or [1] * n)


def figure_star_instance():
    """Center 0 with feet 1..4, five one-node components 5..9 forming ``C``.

    Feet 1 and 2 share component 5; foot 3 sees 6, foot 4 sees 7; the center
    itself touches components 8 and 9.  Costs: center 2, feet 1, 1, 1, 2.
    """
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 8), (0, 9), (1, 5), (2, 5), (3, 6), (4, 7)]
    costs = [2, 1, 1, 1, 2, 1, 1, 1, 1, 1]
    return build_graph(edges, costs), {5, 6, 7, 8, 9}


def random_connected(rng, n, extra_p=0.3, rational=False):
    """Random spanning tree plus independent extra edges; always connected."""
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in edges and rng.random() < extra_p:
                edges.add((a, b))
    if rational:
        costs = [Fraction(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(n)]
    else:
        costs = [1] * n
    return build_graph(sorted(edges), costs)


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    extra = draw(st.sampled_from([0.0, 0.2, 0.5, 0.9]))
    return random_connected(rng, n, extra, rational=draw(st.booleans()))


@st.composite
def states(draw, min_n=1, max_n=10):
    """(graph, m, C) triples with C drawn by independent inclusion."""
    graph = draw(graphs(min_n, max_n))
    m = draw(st.integers(1, 3))
    chosen = draw(st.lists(st.booleans(), min_size=graph.n, max_size=graph.n))
    return graph, m, {v for v, keep in enumerate(chosen) if keep}


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def k2():
    return path_graph(2, [1, 5])


def naive_potential(graph, m, nodes):
    """(p, q) straight from the definitions, via set BFS; the test-side oracle."""
    from cds_forge.graph import induced_components

    nodes = set(nodes)
    q = sum(
        max(0, m - sum(1 for w in graph.neighbors(v) if w in nodes))
        for v in range(graph.n)
        if v not in nodes
    )
    return len(induced_components(graph, nodes)), q


def naive_f(graph, m, nodes):
    return sum(naive_potential(graph, m, nodes))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
