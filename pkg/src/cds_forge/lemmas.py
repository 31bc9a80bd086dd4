"""Randomized harness for the structural properties the solver relies on.

Each trial draws a small connected G(n, p) instance and random node sets,
then checks a battery of inequalities using from-scratch potentials.  The
report counts checks and violations per property; a correct build reports
zero violations.

Properties checked (names are report keys):

``q_monotone_submodular``
    ``0 <= drop_q(C', u) <= drop_q(C, u)`` for ``C`` within ``C'``.
``p_single_node``
    ``drop_p(C, u) >= -1``, with equality iff ``u`` has no neighbour in ``C``.
``p_connected_union``
    For connected ``C'`` disjoint from ``C``:
    ``drop_p(C | C', u) <= drop_p(C, u) + 1``, with equality exactly when
    ``u`` touches ``C'`` but none of the components of ``G[C]`` that ``C'``
    absorbs.  (``C'`` touching ``C`` does not by itself rule equality out.)
``f_monotone``
    ``drop_f(C, u) >= 0``, and the incremental value matches.
``q_set_subadditive``
    ``drop_q(A, B) <= sum of drop_q(A, v)`` over ``v`` in ``B - A``.
``star_prefix_nonnegative``
    Inside any star, each foot's drop over ``C`` plus its predecessors is
    non-negative and is zero iff both its ``q`` and ``p`` drops are zero.
``star_structure``
    Every non-trivial star grown by the per-center search has credit 1 on every foot, each foot costs
    at most ``cost/gain``, no foot has residual demand, and each foot
    touches exactly one component, which the center does not touch.
``star_gain_identity``
    A returned or committed star's gain equals ``f(C) - f(C | S)``.
``star_oracle``
    The returned star's ratio equals the exhaustive optimum.
``q_edge_bonus``
    For an edge ``uv`` with ``u`` in ``C' - C``, ``v`` outside ``C | C'``
    and ``v`` still in demand: ``drop_q(C, C') + drop_q(C, v) >=
    drop_q(C, C' + v) + 1``.
``three_hop``
    When ``C`` dominates but ``G[C]`` is disconnected, some two of its
    components are within three hops.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .generate import COST_MODELS, GenSpec, generate
from .graph import WeightedGraph, induced_components
from .potential import SolverState, _potential_of_mask, delta_f, mask_of
from .solver import greedy_solve
from .stars import b_value, center_search, enumerate_stars_oracle, most_cost_effective_star

__all__ = ["PROPERTIES", "LemmaReport", "lemma_suite", "sample_instance"]

PROPERTIES = (
    "q_monotone_submodular",
    "p_single_node",
    "p_connected_union",
    "f_monotone",
    "q_set_subadditive",
    "star_prefix_nonnegative",
    "star_structure",
    "star_gain_identity",
    "star_oracle",
    "q_edge_bonus",
    "three_hop",
)
MAX_EXAMPLES = 5
ORACLE_DEGREE = 8


@dataclass
class LemmaReport:
    seed: int
    trials: int
    checks: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PROPERTIES, 0))
    violations: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PROPERTIES, 0))
    examples: list[dict] = field(default_factory=list)

    @property
    def total_checks(self) -> int:
        return sum(self.checks.values())

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())

    @property
    def ok(self) -> bool:
        return self.total_violations == 0

    def record(self, name: str, holds: bool, **context) -> None:
        self.checks[name] += 1
        if not holds:
            self.violations[name] += 1
            if len(self.examples) < MAX_EXAMPLES:
                self.examples.append({"property": name, **context})

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "total_checks": self.total_checks,
            "total_violations": self.total_violations,
            "checks": dict(self.checks),
            "violations": dict(self.violations),
            "examples": self.examples,
        }


def sample_instance(rng: random.Random, n_range=(2, 14)) -> tuple[WeightedGraph, int]:
    """Connected G(n, p) with n and p drawn from the harness distribution."""
    spec = GenSpec(
        "gnp",
        rng.randint(*n_range),
        Fraction(rng.randint(2, 8), 10),
        cost_model=rng.choice(COST_MODELS),
        cost_lo=1,
        cost_hi=4,
        seed=rng.getrandbits(64),
    )
    return generate(spec), rng.choice((1, 2, 3))


def _random_subset(rng: random.Random, pool, density: float | None = None) -> set[int]:
    if density is None:
        density = rng.random()
    return {v for v in pool if rng.random() < density}


def _connected_subset(rng: random.Random, graph: WeightedGraph, avoid: set[int]) -> set[int]:
    """Random connected node set of ``G - avoid``, grown from a random seed."""
    pool = [v for v in range(graph.n) if v not in avoid]
    if not pool:
        return set()
    grown = {rng.choice(pool)}
    target = rng.randint(1, len(pool))
    while len(grown) < target:
        frontier = sorted(
            {w for v in grown for w in graph.adjacency[v] if w not in avoid and w not in grown}
        )
        if not frontier:
            break
        grown.add(rng.choice(frontier))
    return grown


class _Scratch:
    """From-scratch potentials of one instance, memoised by bitmask."""

    def __init__(self, graph: WeightedGraph, m: int):
        self.graph = graph
        self.m = m
        self._cache: dict[int, tuple[int, int]] = {}

    def pq(self, nodes) -> tuple[int, int]:
        mask = nodes if isinstance(nodes, int) else mask_of(nodes)
        hit = self._cache.get(mask)
        if hit is None:
            value = _potential_of_mask(self.graph, self.m, mask)
            hit = self._cache[mask] = (value.p, value.q)
        return hit

    def f(self, nodes) -> int:
        return sum(self.pq(nodes))

    def drop(self, base: set[int], extra, which: str) -> int:
        before = self.pq(base)
        after = self.pq(set(base) | set(extra))
        index = {"p": 0, "q": 1}
        if which == "f":
            return sum(before) - sum(after)
        return before[index[which]] - after[index[which]]


def _hop_distance(graph: WeightedGraph, comps: list[frozenset[int]]) -> int:
    owner = {v: i for i, comp in enumerate(comps) for v in comp}
    best = graph.n
    for i, comp in enumerate(comps):
        dist = {v: 0 for v in comp}
        queue = deque(comp)
        while queue:
            v = queue.popleft()
            if dist[v] >= best:
                break
            for w in graph.adjacency[v]:
                if w in dist:
                    continue
                dist[w] = dist[v] + 1
                if owner.get(w, i) != i:
                    best = min(best, dist[w])
                queue.append(w)
    return best


def _trial(report: LemmaReport, rng: random.Random) -> None:
    graph, m = sample_instance(rng)
    n = graph.n
    nodes = range(n)
    scratch = _Scratch(graph, m)
    base = _random_subset(rng, nodes)
    outside = [v for v in nodes if v not in base]
    state = SolverState.from_nodes(graph, m, base)
    ctx = {"n": n, "m": m, "edges": graph.edges(), "C": sorted(base)}

    # submodularity and monotonicity of -q
    bigger = base | _random_subset(rng, outside)
    for u in [v for v in nodes if v not in bigger][:4]:
        small, large = scratch.drop(base, {u}, "q"), scratch.drop(bigger, {u}, "q")
        report.record("q_monotone_submodular", small >= large >= 0, u=u, C2=sorted(bigger))

    for u in outside:
        dp = scratch.drop(base, {u}, "p")
        isolated = not any(w in base for w in graph.adjacency[u])
        report.record("p_single_node", dp >= -1 and (dp == -1) == isolated, u=u)
        df = scratch.drop(base, {u}, "f")
        report.record("f_monotone", df >= 0 and df == delta_f(state, u), u=u)

    for _ in range(3):
        extra = _connected_subset(rng, graph, base)
        rest = [v for v in nodes if v not in base and v not in extra]
        if not extra or not rest:
            continue
        u = rng.choice(rest)
        joint = base | extra
        lhs, rhs = scratch.drop(joint, {u}, "p"), scratch.drop(base, {u}, "p") + 1
        # components of G[C] absorbed by C', and whether u already saw one of them
        absorbed = {c for c in induced_components(graph, base) if any(
            w in c for v in extra for w in graph.adjacency[v])}
        u_on_absorbed = any(w in c for c in absorbed for w in graph.adjacency[u])
        u_on_extra = any(w in extra for w in graph.adjacency[u])
        holds = lhs <= rhs and (lhs == rhs) == (u_on_extra and not u_on_absorbed)
        report.record("p_connected_union", holds, u=u, C2=sorted(extra), **ctx)

    for _ in range(2):
        a = _random_subset(rng, nodes)
        b = _random_subset(rng, nodes)
        whole = scratch.drop(a, b - a, "q")
        parts = sum(scratch.drop(a, {v}, "q") for v in b - a)
        report.record("q_set_subadditive", whole <= parts, A=sorted(a), B=sorted(b))

    if outside:
        center = rng.choice(outside)
        options = [v for v in graph.adjacency[center] if v not in base]
        feet = sorted(_random_subset(rng, options), key=lambda v: (graph.costs[v], v))
        prefix = set(base) | {center}
        for v in feet:
            df = scratch.drop(prefix, {v}, "f")
            dq = scratch.drop(prefix, {v}, "q")
            dp = scratch.drop(prefix, {v}, "p")
            holds = df >= 0 and (df == 0) == (dq == 0 and dp == 0)
            report.record("star_prefix_nonnegative", holds, center=center, foot=v)
            prefix.add(v)

    _, trace = greedy_solve(graph, m)
    _check_star_choice(report, rng, graph, m, scratch, state, base, trace, ctx)

    committed: set[int] = set()
    for it in trace.iterations:
        drop = scratch.drop(committed, set(it.star.nodes), "f")
        report.record("star_gain_identity", drop == it.gain, star=list(it.star.nodes), **ctx)
        committed |= set(it.star.nodes)

    cprime = _random_subset(rng, nodes)
    for u in sorted(cprime - base):
        for v in graph.adjacency[u]:
            if v in base or v in cprime or state.demand(v) == 0:
                continue
            lhs = scratch.drop(base, cprime - base, "q") + scratch.drop(base, {v}, "q")
            rhs = scratch.drop(base, (cprime - base) | {v}, "q") + 1
            report.record("q_edge_bonus", lhs >= rhs, u=u, v=v, C2=sorted(cprime))

    dominating = set(base)
    for v in nodes:
        if v not in dominating and not any(w in dominating for w in graph.adjacency[v]):
            dominating.add(rng.choice((v,) + graph.adjacency[v]))
    comps = induced_components(graph, dominating)
    if len(comps) > 1:
        hops = _hop_distance(graph, comps)
        report.record("three_hop", hops <= 3, hops=hops, D=sorted(dominating), edges=graph.edges())


def _check_star_choice(report, rng, graph, m, scratch, state, base, trace, ctx) -> None:
    # also probe a mid-run greedy state, where non-trivial stars are common
    states = [(state, base)]
    if trace.iterations:
        cut = rng.randrange(len(trace.iterations))
        mid = set()
        for it in trace.iterations[:cut]:
            mid |= set(it.star.nodes)
        states.append((SolverState.from_nodes(graph, m, mid), mid))

    for st, nodes in states:
        star = most_cost_effective_star(st)
        here = {**ctx, "C": sorted(nodes)}
        if star is not None:
            drop = scratch.drop(nodes, set(star.nodes), "f")
            report.record("star_gain_identity", drop == star.gain, star=list(star.nodes), **here)
        for u in range(graph.n):
            if st.selected[u] or st.demand(u):
                continue
            grown = center_search(st, u)
            if grown.feet:
                report.record("star_structure", _has_structure(st, grown), star=list(grown.nodes), **here)
        if max(graph.degree(v) for v in range(graph.n)) <= ORACLE_DEGREE:
            best = enumerate_stars_oracle(graph, m, nodes)
            if best is None:
                holds = star is None
            elif star is None:
                holds = best.gain == 0
            else:
                holds = star.score == best
            report.record("star_oracle", holds, **here)


def _has_structure(state: SolverState, star) -> bool:
    graph = state.graph
    own = state.components.component_neighbors(star.center)
    for i, v in enumerate(star.feet):
        if b_value(state, star.center, star.feet[:i], v) != 1:
            return False
        if star.gain * graph.costs[v] > star.cost:
            return False
        if state.demand(v) != 0:
            return False
        roots = state.components.component_neighbors(v)
        if len(roots) != 1 or roots & own:
            return False
    return True


def lemma_suite(seed: int, trials: int) -> LemmaReport:
    """Run ``trials`` independent randomized trials derived from ``seed``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    report = LemmaReport(seed, trials)
    for i in range(trials):
        _trial(report, random.Random(f"{seed}/{i}"))
    return report
