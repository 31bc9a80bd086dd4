"""Greedy approximation for minimum-weight connected m-fold dominating sets.

The solver repeatedly commits the most cost-effective *star* (a node plus
some of its neighbours) until the selected set is connected and every other
node has at least ``m`` selected neighbours.  Its cost is within
``2 H(max_degree + m - 1)`` of the optimum.

Typical use::

    from cds_forge import build_graph, greedy_solve
    graph = build_graph([(0, 1), (1, 2)], [1, 1, 1])
    selected, trace = greedy_solve(graph, m=1)
"""

__version__ = "0.1.0"

from .exact import OracleResult, exact_min_cds, is_feasible
from .generate import GenSpec, gen_gnp_connected, gen_udg, generate
from .graph import ComponentIndex, WeightedGraph, build_graph, max_degree
from .potential import PotentialValue, SolverState, delta_f, delta_f_set, delta_p, delta_q, eval_potential
from .solver import SolveTrace, greedy_solve, solve_with_bound
from .stars import Star, StarScore, b_value, enumerate_stars_oracle, most_cost_effective_star, star_gain
from .verify import Certificate, bound_coefficient, certify, harmonic

__all__ = [
    "Certificate",
    "ComponentIndex",
    "GenSpec",
    "OracleResult",
    "PotentialValue",
    "SolveTrace",
    "SolverState",
    "Star",
    "StarScore",
    "WeightedGraph",
    "b_value",
    "bound_coefficient",
    "build_graph",
    "certify",
    "delta_f",
    "delta_f_set",
    "delta_p",
    "delta_q",
    "enumerate_stars_oracle",
    "eval_potential",
    "exact_min_cds",
    "gen_gnp_connected",
    "gen_udg",
    "generate",
    "greedy_solve",
    "harmonic",
    "is_feasible",
    "max_degree",
    "most_cost_effective_star",
    "solve_with_bound",
    "star_gain",
]
