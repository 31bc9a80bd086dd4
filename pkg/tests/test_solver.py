import random
from collections import deque
from fractions import Fraction

from hypothesis import given, settings

from cds_forge.exact import exact_min_cds, is_feasible
from cds_forge.graph import build_graph, induced_components, max_degree
from cds_forge.potential import SolverState
from cds_forge.solver import greedy_solve, solve_with_bound
from cds_forge.verify import bound_coefficient

from conftest import complete_graph, cycle_graph, graphs, naive_f, path_graph, random_connected, star_graph


def test_path_takes_center_in_one_step(p3):
    selected, trace = greedy_solve(p3, 1)
    assert selected == {1}
    assert trace.iteration_count == 1
    assert trace.iterations[0].gain == 2
    assert trace.total_cost == 1


def test_edge_prefers_cheap_endpoint(k2):
    selected, trace = greedy_solve(k2, 1)
    assert selected == {0}
    assert trace.total_cost == 1


def test_single_node_fallback():
    g = build_graph([], [4])
    selected, trace = greedy_solve(g, 1)
    assert selected == {0} and trace.singleton_fallback
    assert trace.iteration_count == 0
    selected, trace = greedy_solve(g, 2)
    assert selected == {0} and not trace.singleton_fallback


def test_star_graph_center():
    selected, _ = greedy_solve(star_graph(5), 1)
    assert selected == {0}


def test_bound_coefficients():
    assert bound_coefficient(2, 1) == 3
    assert bound_coefficient(3, 2) == Fraction(25, 6)
    assert bound_coefficient(4, 1) == Fraction(25, 6)
    result = solve_with_bound(path_graph(3), 1, opt_cost=1)
    assert result.coefficient == 3 and result.bound == 3


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_accounting_identities(g):
    for m in (1, 2, 3):
        selected, trace = greedy_solve(g, m)
        assert is_feasible(g, m, selected)
        gains = [it.gain for it in trace.iterations]
        assert all(x >= 1 for x in gains)
        if not trace.singleton_fallback:
            assert sum(gains) == g.n * m - 1
        assert trace.iteration_count <= g.n * m
        paid = sum((it.cost for it in trace.iterations), Fraction(0))
        assert trace.total_cost == (g.costs[0] if trace.singleton_fallback else paid)
        assert all(it.unit_price == it.cost / it.gain for it in trace.iterations)
        assert all(it.f_before - it.f_after == it.gain for it in trace.iterations)


def test_potential_trace_matches_recount():
    rng = random.Random(4)
    for _ in range(100):
        g = random_connected(rng, rng.randint(2, 10), 0.2, rational=True)
        m = rng.randint(1, 3)
        _, trace = greedy_solve(g, m)
        chosen = set()
        for it in trace.iterations:
            assert naive_f(g, m, chosen) == it.f_before
            chosen |= set(it.star.nodes)
            assert naive_f(g, m, chosen) == it.f_after


def test_unit_prices_never_beat_first_choice():
    # the first star maximizes gain per cost over all stars available then
    rng = random.Random(6)
    for _ in range(100):
        g = random_connected(rng, rng.randint(2, 9), 0.3, rational=True)
        _, trace = greedy_solve(g, rng.randint(1, 3))
        if trace.iterations:
            first = trace.iterations[0]
            for u in range(g.n):
                assert first.unit_price <= g.costs[u] / (trace.m + g.degree(u) - 1)


def _hops(g, comps):
    owner = {v: i for i, c in enumerate(comps) for v in c}
    best = None
    for i, comp in enumerate(comps):
        dist = {v: 0 for v in comp}
        queue = deque(comp)
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    if owner.get(w, i) != i:
                        best = dist[w] if best is None else min(best, dist[w])
                    queue.append(w)
    return best


def test_dominating_but_split_selection_has_close_components():
    rng = random.Random(10)
    seen = 0
    for _ in range(300):
        g = random_connected(rng, rng.randint(4, 12), rng.choice([0.0, 0.1]), rational=True)
        m = rng.randint(1, 2)
        _, trace = greedy_solve(g, m)
        chosen = set()
        for it in trace.iterations:
            s = SolverState.from_nodes(g, m, chosen)
            if chosen and s.q_total == 0 and s.components.count > 1:
                seen += 1
                assert _hops(g, induced_components(g, chosen)) <= 3
            chosen |= set(it.star.nodes)
    assert seen > 0


def test_deterministic():
    rng = random.Random(12)
    for _ in range(30):
        g = random_connected(rng, rng.randint(2, 12), 0.3, rational=True)
        a = greedy_solve(g, 2)
        b = greedy_solve(g, 2)
        assert a[0] == b[0] and a[1] == b[1]


def test_named_families_are_feasible_and_bounded():
    for g in (path_graph(7), cycle_graph(8), complete_graph(6), star_graph(6)):
        for m in (1, 2, 3):
            selected, trace = greedy_solve(g, m)
            assert is_feasible(g, m, selected)
            opt = exact_min_cds(g, m).cost
            assert opt <= trace.total_cost <= bound_coefficient(max_degree(g), m) * opt
