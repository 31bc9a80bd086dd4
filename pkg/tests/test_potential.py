import random

import pytest
from hypothesis import given, settings

from cds_forge.graph import NodeInC
from cds_forge.potential import (
    Overlap,
    PotentialValue,
    SolverState,
    delta_f,
    delta_f_set,
    delta_p,
    delta_q,
    eval_potential,
)

from conftest import complete_graph, naive_f, naive_potential, path_graph, random_connected, states


def test_empty_set_potential():
    for g in (path_graph(1), path_graph(4), complete_graph(5)):
        for m in (1, 2, 3):
            assert eval_potential(g, m, ()) == PotentialValue(0, g.n * m)
            assert eval_potential(g, m, ()).f == g.n * m


def test_path_values(p3):
    assert naive_potential(p3, 1, {1}) == (1, 0)
    assert eval_potential(p3, 1, {1}) == PotentialValue(p=1, q=0)
    assert naive_potential(p3, 1, {0, 2}) == (2, 0)
    assert eval_potential(p3, 1, {0, 2}).f == 2


def test_delta_q_examples(p3, k2):
    # P3 center, m=1: own demand 1 plus two needy leaves
    s = SolverState(p3, 1)
    assert delta_q(s, 1) == 3 == naive_potential(p3, 1, set())[1] - naive_potential(p3, 1, {1})[1]
    # K2, m=2, node 0: own demand 2 plus needy node 1
    s = SolverState(k2, 2)
    assert delta_q(s, 0) == 3 == naive_potential(k2, 2, set())[1] - naive_potential(k2, 2, {0})[1]


def test_delta_q_with_all_neighbours_selected():
    g = complete_graph(4)
    for m in (1, 2, 3, 5):
        s = SolverState.from_nodes(g, m, {1, 2, 3})
        assert delta_q(s, 0) == s.demand(0) == max(0, m - 3)


def test_delta_p_examples(p3):
    assert delta_p(SolverState(p3, 1), 1) == -1
    assert delta_p(SolverState.from_nodes(p3, 1, {0, 2}), 1) == 1
    assert delta_p(SolverState.from_nodes(p3, 1, {0}), 1) == 0
    # BFS recount agrees
    assert naive_potential(p3, 1, {0, 2})[0] - naive_potential(p3, 1, {0, 1, 2})[0] == 1


def test_delta_f_examples(p3):
    s = SolverState(p3, 1)
    assert delta_f(s, 1) == 2 == naive_f(p3, 1, set()) - naive_f(p3, 1, {1})
    assert delta_f(s, 0) == 1 == naive_f(p3, 1, set()) - naive_f(p3, 1, {0})
    full = SolverState.from_nodes(p3, 1, {0, 1})
    assert full.potential().f == 1
    assert delta_f(full, 2) == 0


def test_marginals_reject_selected(p3):
    s = SolverState.from_nodes(p3, 1, {1})
    for fn in (delta_q, delta_p, delta_f):
        with pytest.raises(NodeInC):
            fn(s, 1)
    with pytest.raises(NodeInC):
        s.add(1)


def test_delta_f_set_examples(p3):
    assert delta_f_set(p3, 1, set(), set()) == 0
    assert delta_f_set(p3, 1, set(), {1}) == 2
    assert delta_f_set(p3, 1, set(), {0, 1, 2}) == 2
    with pytest.raises(Overlap):
        delta_f_set(p3, 1, {0}, {0, 1})


def test_fold_must_be_positive(p3):
    with pytest.raises(ValueError):
        SolverState(p3, 0)


@settings(max_examples=300, deadline=None)
@given(states())
def test_scratch_matches_naive(state):
    g, m, chosen = state
    value = eval_potential(g, m, chosen)
    assert (value.p, value.q) == naive_potential(g, m, chosen)


@settings(max_examples=300, deadline=None)
@given(states())
def test_incremental_state_matches_scratch(state):
    g, m, chosen = state
    s = SolverState(g, m)
    built = set()
    for v in sorted(chosen):
        s.add(v)
        built.add(v)
        assert s.potential() == eval_potential(g, m, built)
        for u in range(g.n):
            expect = 0 if u in built else max(0, m - sum(1 for w in g.neighbors(u) if w in built))
            assert s.demand(u) == expect


@settings(max_examples=300, deadline=None)
@given(states())
def test_single_node_marginals_match_recount(state):
    g, m, chosen = state
    s = SolverState.from_nodes(g, m, chosen)
    before = naive_potential(g, m, chosen)
    for u in range(g.n):
        if u in chosen:
            continue
        after = naive_potential(g, m, chosen | {u})
        assert delta_p(s, u) == before[0] - after[0]
        assert delta_q(s, u) == before[1] - after[1]
        assert delta_f(s, u) == sum(before) - sum(after) >= 0


def test_negative_q_is_monotone_and_submodular():
    rng = random.Random(7)
    for _ in range(500):
        g = random_connected(rng, rng.randint(2, 10), rng.random())
        m = rng.randint(1, 3)
        small = {v for v in range(g.n) if rng.random() < 0.3}
        large = small | {v for v in range(g.n) if rng.random() < 0.3}
        for u in range(g.n):
            if u in large:
                continue
            a = delta_q(SolverState.from_nodes(g, m, small), u)
            b = delta_q(SolverState.from_nodes(g, m, large), u)
            assert a >= b >= 0


def test_union_marginal_bounded_by_sum():
    rng = random.Random(8)
    for _ in range(500):
        g = random_connected(rng, rng.randint(2, 10), rng.random())
        m = rng.randint(1, 3)
        a = {v for v in range(g.n) if rng.random() < 0.4}
        b = {v for v in range(g.n) if rng.random() < 0.4}
        q = lambda nodes: naive_potential(g, m, nodes)[1]  # noqa: E731
        assert q(a) - q(a | b) <= sum(q(a) - q(a | {v}) for v in b - a)


def test_feasible_set_has_unit_potential():
    g = complete_graph(4)
    assert eval_potential(g, 2, {0, 1}).f == 1
    assert eval_potential(g, 3, {0, 1}).f == 3
