"""Seeded random instances: connected G(n, p) and unit-disk graphs.

All sampling uses integer draws from :class:`random.Random`, so a given
spec reproduces the same instance on any platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .graph import DisconnectedGraph, WeightedGraph, build_graph

__all__ = ["GaveUp", "GenSpec", "COST_MODELS", "generate", "gen_gnp_connected", "gen_udg"]

GRID = 1 << 20
MAX_ATTEMPTS = 1000
COST_MODELS = ("unit", "uniform", "exponential")


class GaveUp(RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    """Parameters of a random instance.

    ``param`` is the edge probability for ``gnp`` and the connection radius
    (in unit-square coordinates) for ``unit-disk``.  ``cost_lo``/``cost_hi``
    bound the integer draws of the ``uniform`` model.
    """

    model: str
    n: int
    param: Fraction
    cost_model: str = "unit"
    cost_lo: int = 1
    cost_hi: int = 10
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "param", Fraction(self.param))
        if self.model not in ("gnp", "unit-disk"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.model == "gnp" and not 0 < self.param <= 1:
            raise ValueError("edge probability must lie in (0, 1]")
        if self.model == "unit-disk" and self.param <= 0:
            raise ValueError("radius must be positive")
        if self.cost_model not in COST_MODELS:
            raise ValueError(f"unknown cost model {self.cost_model!r}")
        if not 1 <= self.cost_lo <= self.cost_hi:
            raise ValueError("need 1 <= cost_lo <= cost_hi")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must fit in 64 bits")


def _draw_costs(spec: GenSpec, rng: random.Random) -> list[Fraction]:
    if spec.cost_model == "unit":
        return [Fraction(1)] * spec.n
    if spec.cost_model == "uniform":
        return [Fraction(rng.randint(spec.cost_lo, spec.cost_hi)) for _ in range(spec.n)]
    # geometric numerator over a small denominator: a discretised exponential
    costs = []
    for _ in range(spec.n):
        k = 1
        while k < 64 and rng.getrandbits(2):
            k += 1
        costs.append(Fraction(k, rng.choice((1, 2, 3, 4))))
    return costs


def _gnp_edges(n: int, p: Fraction, rng: random.Random) -> list[tuple[int, int]]:
    threshold = p * (1 << 32)
    return [(a, b) for a in range(n) for b in range(a + 1, n) if rng.getrandbits(32) < threshold]


def _udg_edges(n: int, radius: Fraction, rng: random.Random) -> list[tuple[int, int]]:
    points = [(rng.randrange(GRID), rng.randrange(GRID)) for _ in range(n)]
    reach = radius * radius * GRID * GRID
    edges = []
    for a in range(n):
        xa, ya = points[a]
        for b in range(a + 1, n):
            xb, yb = points[b]
            if (xa - xb) ** 2 + (ya - yb) ** 2 <= reach:
                edges.append((a, b))
    return edges


def generate(spec: GenSpec) -> WeightedGraph:
    """Draw graphs from ``spec`` until one is connected.

    Raises :class:`GaveUp` after 1000 disconnected draws.
    """
    rng = random.Random(spec.seed)
    sample = _gnp_edges if spec.model == "gnp" else _udg_edges
    for _ in range(MAX_ATTEMPTS):
        edges = sample(spec.n, spec.param, rng)
        costs = _draw_costs(spec, rng)
        try:
            return build_graph(edges, costs)
        except DisconnectedGraph:
            continue
    raise GaveUp(f"no connected {spec.model} graph in {MAX_ATTEMPTS} attempts")


def gen_gnp_connected(spec: GenSpec) -> WeightedGraph:
    if spec.model != "gnp":
        raise ValueError("spec is not a gnp spec")
    return generate(spec)


def gen_udg(spec: GenSpec) -> WeightedGraph:
    if spec.model != "unit-disk":
        raise ValueError("spec is not a unit-disk spec")
    return generate(spec)
