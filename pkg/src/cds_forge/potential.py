"""Integer potentials over node sets and their marginals.

For a selected set ``C`` and fold ``m``:

* the residual demand of ``u`` outside ``C`` is ``max(0, m - |N_C(u)|)``,
  and zero inside ``C``;
* ``q(C)`` is the total residual demand;
* ``p(C)`` is the number of connected components of ``G[C]``;
* ``f(C) = p(C) + q(C)``.

``f(C) == 1`` exactly when ``C`` is a connected ``m``-fold dominating set.
Marginals are reported as potential *drops*: ``delta_f(state, u)`` is
``f(C) - f(C + u)``, which is never negative.

:class:`SolverState` maintains the demands and components incrementally;
:func:`eval_potential` and :func:`delta_f_set` recompute from scratch and
serve as the reference the incremental path is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import ComponentIndex, NodeInC, WeightedGraph

__all__ = [
    "PotentialValue",
    "SolverState",
    "Overlap",
    "eval_potential",
    "delta_q",
    "delta_p",
    "delta_f",
    "delta_f_set",
    "mask_of",
]


class Overlap(ValueError):
    pass


@dataclass(frozen=True)
class PotentialValue:
    p: int
    q: int

    @property
    def f(self) -> int:
        return self.p + self.q


def mask_of(nodes: Iterable[int]) -> int:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    return mask


def _count_components(masks: tuple[int, ...], members: int) -> int:
    count = 0
    remaining = members
    while remaining:
        low = remaining & -remaining
        seen = low
        frontier = low
        while frontier:
            grown = 0
            f = frontier
            while f:
                bit = f & -f
                grown |= masks[bit.bit_length() - 1]
                f ^= bit
            frontier = grown & members & ~seen
            seen |= frontier
        remaining &= ~seen
        count += 1
    return count


def _potential_of_mask(graph: WeightedGraph, m: int, members: int) -> PotentialValue:
    masks = graph.masks
    q = 0
    for v in range(graph.n):
        if not members >> v & 1:
            q += max(0, m - (masks[v] & members).bit_count())
    return PotentialValue(_count_components(masks, members), q)


def eval_potential(graph: WeightedGraph, m: int, nodes: Iterable[int]) -> PotentialValue:
    """Compute ``p``, ``q`` and ``f`` of a node set from scratch."""
    return _potential_of_mask(graph, m, mask_of(nodes))


def delta_f_set(graph: WeightedGraph, m: int, base: Iterable[int], extra: Iterable[int]) -> int:
    """``f(C) - f(C | S)`` by two from-scratch evaluations."""
    base_mask, extra_mask = mask_of(base), mask_of(extra)
    if base_mask & extra_mask:
        raise Overlap("added set intersects the base set")
    before = _potential_of_mask(graph, m, base_mask).f
    after = _potential_of_mask(graph, m, base_mask | extra_mask).f
    return before - after


class SolverState:
    """Selected set with incrementally maintained demands and components.

    ``dominators[v]`` counts the selected neighbours of ``v``; ``q_total`` and
    ``components.count`` give ``q(C)`` and ``p(C)`` in constant time.
    """

    __slots__ = ("graph", "m", "selected", "dominators", "q_total", "components")

    def __init__(self, graph: WeightedGraph, m: int):
        if m < 1:
            raise ValueError(f"fold m must be a positive integer, got {m}")
        self.graph = graph
        self.m = m
        self.selected = [False] * graph.n
        self.dominators = [0] * graph.n
        self.q_total = graph.n * m
        self.components = ComponentIndex(graph)

    @classmethod
    def from_nodes(cls, graph: WeightedGraph, m: int, nodes: Iterable[int]) -> SolverState:
        state = cls(graph, m)
        for v in sorted(set(nodes)):
            state.add(v)
        return state

    def copy(self) -> SolverState:
        other = SolverState.__new__(SolverState)
        other.graph = self.graph
        other.m = self.m
        other.selected = self.selected[:]
        other.dominators = self.dominators[:]
        other.q_total = self.q_total
        other.components = self.components.copy()
        return other

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(v for v, s in enumerate(self.selected) if s)

    def demand(self, v: int) -> int:
        if self.selected[v]:
            return 0
        return max(0, self.m - self.dominators[v])

    def potential(self) -> PotentialValue:
        return PotentialValue(self.components.count, self.q_total)

    def add(self, u: int) -> None:
        if self.selected[u]:
            raise NodeInC(f"node {u} is already selected")
        m = self.m
        self.q_total -= self.demand(u)
        self.components.add_node(u)
        self.selected[u] = True
        for w in self.graph.adjacency[u]:
            if not self.selected[w] and self.dominators[w] < m:
                self.q_total -= 1
            self.dominators[w] += 1

    def _check_outside(self, u: int) -> None:
        if self.selected[u]:
            raise NodeInC(f"node {u} is already selected")


def delta_q(state: SolverState, u: int) -> int:
    """Drop in ``q`` from adding ``u``: its own demand plus one per needy neighbour."""
    state._check_outside(u)
    return state.demand(u) + sum(1 for w in state.graph.adjacency[u] if state.demand(w) > 0)


def delta_p(state: SolverState, u: int) -> int:
    """Drop in ``p`` from adding ``u``; ``-1`` when ``u`` touches no component."""
    return len(state.components.component_neighbors(u)) - 1


def delta_f(state: SolverState, u: int) -> int:
    return delta_q(state, u) + delta_p(state, u)
