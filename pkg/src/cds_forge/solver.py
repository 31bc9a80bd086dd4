"""Greedy star-commit loop for minimum-weight connected m-fold domination."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .graph import WeightedGraph, max_degree
from .potential import SolverState
from .stars import Star, most_cost_effective_star
from .verify import bound_coefficient

__all__ = [
    "InvariantBreach",
    "Iteration",
    "SolveTrace",
    "BoundedSolution",
    "greedy_solve",
    "solve_with_bound",
]


class InvariantBreach(RuntimeError):
    """An accounting identity of the greedy loop failed; indicates a bug."""


@dataclass(frozen=True)
class Iteration:
    star: Star
    f_before: int
    f_after: int

    @property
    def gain(self) -> int:
        return self.star.gain

    @property
    def cost(self) -> Fraction:
        return self.star.cost

    @property
    def unit_price(self) -> Fraction:
        """Cost paid per unit of potential drop."""
        return self.star.cost / self.star.gain


@dataclass
class SolveTrace:
    n: int
    m: int
    iterations: list[Iteration] = field(default_factory=list)
    selected: tuple[int, ...] = ()
    total_cost: Fraction = Fraction(0)
    # set when the lone node of a one-node graph is added outside the loop
    singleton_fallback: bool = False
    search_seconds: list[float] = field(default_factory=list, compare=False, repr=False)

    @property
    def iteration_count(self) -> int:
        return len(self.iterations)


def greedy_solve(graph: WeightedGraph, m: int) -> tuple[frozenset[int], SolveTrace]:
    """Commit most cost-effective stars until none has positive gain.

    The result is a connected ``m``-fold dominating set.  Each committed
    star's gain must equal the observed drop in the potential; a mismatch
    raises :class:`InvariantBreach`.
    """
    state = SolverState(graph, m)
    trace = SolveTrace(graph.n, m)
    f_now = state.potential().f
    while True:
        started = time.perf_counter()
        star = most_cost_effective_star(state)
        trace.search_seconds.append(time.perf_counter() - started)
        if star is None:
            break
        for v in star.nodes:
            state.add(v)
        f_next = state.potential().f
        if f_now - f_next != star.gain or star.gain < 1:
            raise InvariantBreach(
                f"star {star.nodes} claimed gain {star.gain} but f went {f_now} -> {f_next}"
            )
        trace.iterations.append(Iteration(star, f_now, f_next))
        f_now = f_next

    if graph.n == 1 and not state.selected[0]:
        # with m == 1 the lone node has zero gain, yet the empty set dominates nothing
        state.add(0)
        trace.singleton_fallback = True
    elif f_now != 1:
        raise InvariantBreach(f"greedy loop stopped at f = {f_now}, expected 1")

    selected = state.nodes
    trace.selected = tuple(sorted(selected))
    trace.total_cost = graph.total_cost(selected)
    return selected, trace


@dataclass(frozen=True)
class BoundedSolution:
    selected: frozenset[int]
    trace: SolveTrace
    coefficient: Fraction
    bound: Optional[Fraction]


def solve_with_bound(
    graph: WeightedGraph, m: int, opt_cost: Optional[Fraction] = None
) -> BoundedSolution:
    """Solve and attach the guarantee ``2 H(max_degree + m - 1)``.

    ``bound`` is the coefficient times ``opt_cost`` (an optimum or any lower
    bound on it) when one is supplied.
    """
    selected, trace = greedy_solve(graph, m)
    coefficient = bound_coefficient(max_degree(graph), m)
    bound = None if opt_cost is None else coefficient * Fraction(opt_cost)
    return BoundedSolution(selected, trace, coefficient, bound)
