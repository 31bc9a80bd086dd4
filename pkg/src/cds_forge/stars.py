"""Stars, their gains, and the most cost-effective star search.

A star is a center ``u`` outside ``C`` plus some neighbours of ``u`` (its
feet), also outside ``C``.  Feet are always taken in canonical order, by
``(cost, node id)``.  The gain of a star is

    delta_f(C, u) + sum of b(foot_i)

where ``b(foot_i)`` is 0 if the foot still has residual demand under ``C``,
and otherwise ``min(1, delta_f(C_i, foot_i))`` with ``C_i`` the union of
``C``, the center and the preceding feet.  Cost-effectiveness is gain over
total star cost, compared exactly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .graph import WeightedGraph
from .potential import SolverState, _potential_of_mask, delta_f, mask_of

__all__ = [
    "InvalidStar",
    "InvalidPrefix",
    "DegreeTooLarge",
    "Star",
    "StarScore",
    "canonical_feet",
    "b_value",
    "star_gain",
    "most_cost_effective_star",
    "center_search",
    "enumerate_stars_oracle",
]


class InvalidStar(ValueError):
    pass


class InvalidPrefix(InvalidStar):
    pass


class DegreeTooLarge(ValueError):
    pass


@functools.total_ordering
class StarScore:
    """Exact gain/cost ratio compared by cross-multiplication."""

    __slots__ = ("gain", "cost")

    def __init__(self, gain: int, cost: Fraction):
        self.gain = gain
        self.cost = Fraction(cost)

    @property
    def ratio(self) -> Fraction:
        return self.gain / self.cost

    def __eq__(self, other) -> bool:
        if not isinstance(other, StarScore):
            return NotImplemented
        return self.gain * other.cost == other.gain * self.cost

    def __lt__(self, other: StarScore) -> bool:
        return self.gain * other.cost < other.gain * self.cost

    def __hash__(self) -> int:
        return hash(self.ratio)

    def __repr__(self) -> str:
        return f"StarScore({self.gain}/{self.cost})"


@dataclass(frozen=True)
class Star:
    center: int
    feet: tuple[int, ...]
    gain: int
    cost: Fraction

    @property
    def nodes(self) -> tuple[int, ...]:
        return (self.center,) + self.feet

    @property
    def trivial(self) -> bool:
        return not self.feet

    @property
    def score(self) -> StarScore:
        return StarScore(self.gain, self.cost)


def canonical_feet(graph: WeightedGraph, feet: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(feet, key=lambda v: (graph.costs[v], v)))


class _Overlay:
    """Read-only view of ``C`` extended by a growing star, without touching ``state``.

    Tracks how many star nodes each vertex sees and which components of
    ``G[C]`` have been absorbed into the star's component.
    """

    __slots__ = ("state", "members", "star_adj", "merged")

    def __init__(self, state: SolverState):
        self.state = state
        self.members: set[int] = set()
        self.star_adj: dict[int, int] = {}
        self.merged: set[int] = set()

    def add(self, x: int) -> None:
        state = self.state
        self.members.add(x)
        find = state.components.find
        for w in state.graph.adjacency[x]:
            self.star_adj[w] = self.star_adj.get(w, 0) + 1
            if state.selected[w]:
                self.merged.add(find(w))

    def demand(self, w: int) -> int:
        state = self.state
        if state.selected[w] or w in self.members:
            return 0
        return max(0, state.m - state.dominators[w] - self.star_adj.get(w, 0))

    def delta_f(self, v: int) -> int:
        state = self.state
        dq = self.demand(v) + sum(1 for w in state.graph.adjacency[v] if self.demand(w) > 0)
        roots = state.components.component_neighbors(v)
        outside = roots - self.merged
        touches_star = self.star_adj.get(v, 0) > 0 or len(outside) < len(roots)
        return dq + len(outside) + (1 if touches_star else 0) - 1


def _check_star(state: SolverState, center: int, feet: Sequence[int], exc=InvalidStar) -> None:
    graph = state.graph
    if not 0 <= center < graph.n or state.selected[center]:
        raise exc(f"center {center} is not an unselected node")
    nbrs = set(graph.adjacency[center])
    if len(set(feet)) != len(feet):
        raise exc("feet must be distinct")
    for v in feet:
        if v not in nbrs:
            raise exc(f"foot {v} is not a neighbour of center {center}")
        if state.selected[v]:
            raise exc(f"foot {v} is already selected")


def b_value(state: SolverState, center: int, prefix: Sequence[int], foot: int) -> int:
    """Credit (0 or 1) of ``foot`` following ``prefix`` in a star at ``center``.

    ``prefix`` must list the preceding feet in canonical order, and ``foot``
    must come after all of them in that order.
    """
    _check_star(state, center, list(prefix) + [foot], InvalidPrefix)
    graph = state.graph
    key = lambda v: (graph.costs[v], v)  # noqa: E731
    if list(prefix) != sorted(prefix, key=key) or (prefix and key(prefix[-1]) > key(foot)):
        raise InvalidPrefix("prefix and foot are not in canonical order")
    if state.demand(foot) > 0:
        return 0
    overlay = _Overlay(state)
    overlay.add(center)
    for v in prefix:
        overlay.add(v)
    return min(1, overlay.delta_f(foot))


def star_gain(state: SolverState, center: int, feet: Iterable[int] = ()) -> int:
    """Gain of the star ``center + feet`` with respect to ``state``."""
    feet = list(feet)
    _check_star(state, center, feet)
    gain = delta_f(state, center)
    overlay = _Overlay(state)
    overlay.add(center)
    for v in canonical_feet(state.graph, feet):
        if state.demand(v) == 0:
            gain += min(1, overlay.delta_f(v))
        overlay.add(v)
    return gain


def center_search(state: SolverState, u: int) -> Star:
    """Best star centered at ``u``, grown foot by foot in canonical order."""
    graph = state.graph
    costs = graph.costs
    gain = delta_f(state, u)
    cost = costs[u]
    feet: list[int] = []
    if state.demand(u) == 0:
        comps = state.components
        own = comps.component_neighbors(u)
        candidates = []
        for v in graph.adjacency[u]:
            if state.selected[v] or state.demand(v) > 0:
                continue
            roots = comps.component_neighbors(v)
            if len(roots) == 1 and not roots & own:
                candidates.append(v)
        if candidates:
            overlay = _Overlay(state)
            overlay.add(u)
            for v in canonical_feet(graph, candidates):
                # 1/c(v) >= gain/cost, cross-multiplied
                if cost >= gain * costs[v] and overlay.delta_f(v) >= 1:
                    feet.append(v)
                    overlay.add(v)
                    gain += 1
                    cost += costs[v]
    return Star(u, tuple(feet), gain, cost)


def _better(a: Star, b: Optional[Star]) -> bool:
    """Whether ``a`` beats incumbent ``b``: ratio, then trivial, center, feet."""
    if b is None:
        return True
    lhs, rhs = a.gain * b.cost, b.gain * a.cost
    if lhs != rhs:
        return lhs > rhs
    if a.trivial != b.trivial:
        return a.trivial
    if a.center != b.center:
        return a.center < b.center
    return sorted(a.feet) < sorted(b.feet)


def most_cost_effective_star(state: SolverState) -> Optional[Star]:
    """Return a star of maximum gain/cost, or ``None`` if no star has positive gain.

    Trivial stars are preferred on ties, so a non-trivial result means no
    single node reaches the best ratio.
    """
    best: Optional[Star] = None
    costs = state.graph.costs
    for u in range(state.graph.n):
        if state.selected[u]:
            continue
        star = center_search(state, u)
        if star.feet:
            trivial = Star(u, (), delta_f(state, u), costs[u])
            if _better(trivial, best):
                best = trivial
        if _better(star, best):
            best = star
    if best is None or best.gain <= 0:
        return None
    return best


def enumerate_stars_oracle(
    graph: WeightedGraph, m: int, nodes: Iterable[int], max_center_degree: int = 15
) -> Optional[StarScore]:
    """Best gain/cost over every star, by exhaustive enumeration.

    Every feet subset of every center is scored from scratch, independently
    of the incremental machinery.  Returns ``None`` when every node is
    already selected.
    """
    worst = max((graph.degree(v) for v in range(graph.n)), default=0)
    if worst > max_center_degree:
        raise DegreeTooLarge(f"max degree {worst} exceeds oracle limit {max_center_degree}")
    base = mask_of(nodes)

    def f(mask: int) -> int:
        return _potential_of_mask(graph, m, mask).f

    def demand(v: int) -> int:
        return max(0, m - (graph.masks[v] & base).bit_count())

    f_base = f(base)
    best: Optional[StarScore] = None

    def grow(options, start, current, f_current, gain, cost):
        nonlocal best
        score = StarScore(gain, cost)
        if best is None or score > best:
            best = score
        for j in range(start, len(options)):
            v = options[j]
            extended = current | 1 << v
            f_extended = f(extended)
            credit = min(1, f_current - f_extended) if demand(v) == 0 else 0
            grow(options, j + 1, extended, f_extended, gain + credit, cost + graph.costs[v])

    for u in range(graph.n):
        if base >> u & 1:
            continue
        with_center = base | 1 << u
        f_center = f(with_center)
        options = canonical_feet(graph, [v for v in graph.adjacency[u] if not base >> v & 1])
        grow(options, 0, with_center, f_center, f_base - f_center, graph.costs[u])
    return best
