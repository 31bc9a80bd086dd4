"""Harmonic bound coefficients and solution certificates."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .graph import WeightedGraph, max_degree

__all__ = [
    "NonPositive",
    "MismatchedInstance",
    "Certificate",
    "harmonic",
    "bound_coefficient",
    "certify",
]


class NonPositive(ValueError):
    pass


class MismatchedInstance(ValueError):
    pass


def harmonic(k: int) -> Fraction:
    """Exact ``H(k) = 1 + 1/2 + ... + 1/k``."""
    if k < 1:
        raise NonPositive(f"harmonic number needs k >= 1, got {k}")
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))


def bound_coefficient(delta_max: int, m: int) -> Fraction:
    """Approximation guarantee ``2 H(delta_max + m - 1)`` of the greedy solver."""
    return 2 * harmonic(delta_max + m - 1)


@dataclass(frozen=True)
class Certificate:
    feasible: bool
    greedy_cost: Fraction
    bound_coefficient: Fraction
    opt_cost: Optional[Fraction] = None
    bound_satisfied: Optional[bool] = None
    empirical_ratio: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        return self.feasible and self.bound_satisfied is not False

    def to_dict(self) -> dict:
        out = {}
        for key, value in asdict(self).items():
            out[key] = format_fraction(value) if isinstance(value, Fraction) else value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> Certificate:
        def frac(key):
            value = data.get(key)
            return None if value is None else parse_fraction(value)

        return cls(
            feasible=bool(data["feasible"]),
            greedy_cost=frac("greedy_cost"),
            bound_coefficient=frac("bound_coefficient"),
            opt_cost=frac("opt_cost"),
            bound_satisfied=data.get("bound_satisfied"),
            empirical_ratio=frac("empirical_ratio"),
        )


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    num, sep, den = str(text).partition("/")
    return Fraction(int(num), int(den) if sep else 1)


def certify(
    graph: WeightedGraph,
    m: int,
    selected: Iterable[int],
    opt_cost: Optional[Fraction] = None,
    trace=None,
) -> Certificate:
    """Check a claimed solution and, given an optimum, the approximation bound.

    ``trace`` (a :class:`~cds_forge.solver.SolveTrace`) is optional; when
    given it must describe the same instance and the same selected set.
    """
    from .exact import is_feasible

    nodes = sorted(set(selected))
    if any(not 0 <= v < graph.n for v in nodes):
        raise MismatchedInstance("solution names nodes outside the instance")
    if trace is not None:
        if trace.n != graph.n or trace.m != m:
            raise MismatchedInstance(
                f"trace is for n={trace.n}, m={trace.m}; instance has n={graph.n}, m={m}"
            )
        if tuple(nodes) != tuple(trace.selected):
            raise MismatchedInstance("trace selection differs from the certified set")

    cost = graph.total_cost(nodes)
    coefficient = bound_coefficient(max_degree(graph), m)
    feasible = is_feasible(graph, m, nodes)
    if opt_cost is None:
        return Certificate(feasible, cost, coefficient)
    opt_cost = Fraction(opt_cost)
    return Certificate(
        feasible,
        cost,
        coefficient,
        opt_cost=opt_cost,
        bound_satisfied=cost <= coefficient * opt_cost,
        empirical_ratio=cost / opt_cost,
    )
