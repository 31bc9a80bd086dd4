"""Feasibility predicate and brute-force optimum for desk-scale instances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph import WeightedGraph, induced_components

__all__ = ["TooLarge", "OracleResult", "is_feasible", "exact_min_cds"]


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    optimum: tuple[int, ...]
    cost: Fraction
    subsets_examined: int


def is_feasible(graph: WeightedGraph, m: int, nodes: Iterable[int]) -> bool:
    """True iff ``nodes`` is nonempty, ``m``-fold dominating and induces a connected graph."""
    members = set(nodes)
    if not members:
        return False
    for v in range(graph.n):
        if v not in members and sum(1 for w in graph.adjacency[v] if w in members) < m:
            return False
    return len(induced_components(graph, members)) == 1


def _connected(masks: tuple[int, ...], members: int) -> bool:
    seen = members & -members
    frontier = seen
    while frontier:
        grown = 0
        while frontier:
            bit = frontier & -frontier
            grown |= masks[bit.bit_length() - 1]
            frontier ^= bit
        frontier = grown & members & ~seen
        seen |= frontier
    return seen == members


def _feasible_mask(masks: tuple[int, ...], n: int, m: int, members: int) -> bool:
    for v in range(n):
        if not members >> v & 1 and (masks[v] & members).bit_count() < m:
            return False
    return _connected(masks, members)


def _members(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v for v in range(n) if mask >> v & 1)


def exact_min_cds(
    graph: WeightedGraph, m: int, node_limit: int = 20, prune: bool = True
) -> OracleResult:
    """Minimum-cost connected ``m``-fold dominating set by exhaustive search.

    With ``prune`` the search is a depth-first include/exclude scan that cuts
    branches costing more than the incumbent, or where some excluded node can
    no longer collect ``m`` selected neighbours.  Without it, all ``2^n``
    subsets are checked.  Ties go to the lexicographically smallest node tuple.
    """
    n = graph.n
    if n > node_limit:
        raise TooLarge(f"{n} nodes exceeds the oracle limit of {node_limit}")
    scale = math.lcm(*(c.denominator for c in graph.costs))
    weights = [int(c * scale) for c in graph.costs]
    masks = graph.masks

    best_mask = 0
    best_cost = None
    examined = 0

    def offer(mask: int, cost: int) -> None:
        nonlocal best_mask, best_cost
        if (
            best_cost is None
            or cost < best_cost
            or (cost == best_cost and _members(mask, n) < _members(best_mask, n))
        ):
            best_mask, best_cost = mask, cost

    if not prune:
        for mask in range(1, 1 << n):
            examined += 1
            if _feasible_mask(masks, n, m, mask):
                offer(mask, sum(weights[v] for v in _members(mask, n)))
    else:
        full = (1 << n) - 1

        def search(i: int, mask: int, excluded: int, cost: int) -> None:
            nonlocal examined
            if best_cost is not None and cost > best_cost:
                return
            if i == n:
                examined += 1
                if mask and _connected(masks, mask):
                    offer(mask, cost)
                return
            if can_exclude(i, excluded):
                search(i + 1, mask, excluded | 1 << i, cost)
            search(i + 1, mask | 1 << i, excluded, cost + weights[i])

        def can_exclude(i: int, excluded: int) -> bool:
            # i and its excluded neighbours must still be able to reach m selected neighbours
            possible = full & ~(excluded | 1 << i)
            touched = (masks[i] & excluded) | 1 << i
            while touched:
                bit = touched & -touched
                if (masks[bit.bit_length() - 1] & possible).bit_count() < m:
                    return False
                touched ^= bit
            return True

        search(0, 0, 0, 0)

    return OracleResult(_members(best_mask, n), Fraction(best_cost, scale), examined)
