"""Batch benchmark: greedy versus exact optimum, and star-search scaling."""

from __future__ import annotations

import csv
import io
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import exact_min_cds
from .generate import COST_MODELS, GenSpec, generate
from .graph import max_degree
from .solver import solve_with_bound
from .verify import certify, format_fraction

__all__ = [
    "BenchRow",
    "ScalingRow",
    "bench_specs",
    "run_bench_case",
    "run_bench",
    "run_scaling",
    "scaling_exponent",
    "format_table",
    "worker_count",
]

THREADS_ENV = "CDS_FORGE_THREADS"
GNP_PROBABILITIES = (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10))
UDG_RADII = (Fraction(9, 20), Fraction(3, 5), Fraction(4, 5))


def worker_count() -> int:
    """Parallelism from ``CDS_FORGE_THREADS``; unset means 1, ``0`` means one per CPU."""
    raw = os.environ.get(THREADS_ENV, "1").strip() or "1"
    value = int(raw)
    if value < 0:
        raise ValueError(f"{THREADS_ENV} must be >= 0")
    return value or (os.cpu_count() or 1)


@dataclass(frozen=True)
class BenchRow:
    model: str
    n: int
    edges: int
    m: int
    delta_max: int
    cost_model: str
    seed: int
    iterations: int
    feasible: bool
    greedy_cost: Fraction
    opt_cost: Optional[Fraction]
    ratio: Optional[Fraction]
    coefficient: Fraction
    bound_ok: Optional[bool]
    wall_seconds: float
    search_seconds: float


@dataclass(frozen=True)
class ScalingRow:
    n: int
    edges: int
    m: int
    iterations: int
    search_seconds: float
    wall_seconds: float


def bench_specs(
    count: int, seed: int, n_min: int = 2, n_max: int = 12, folds: Sequence[int] = (1, 2, 3)
) -> list[tuple[GenSpec, int]]:
    """Deterministic mix of G(n, p) and unit-disk instances with varied costs."""
    rng = random.Random(seed)
    cases = []
    for i in range(count):
        model = "gnp" if i % 2 == 0 else "unit-disk"
        param = rng.choice(GNP_PROBABILITIES if model == "gnp" else UDG_RADII)
        spec = GenSpec(
            model,
            rng.randint(n_min, n_max),
            param,
            cost_model=COST_MODELS[(i // 2) % len(COST_MODELS)],
            cost_lo=1,
            cost_hi=9,
            seed=rng.getrandbits(64),
        )
        cases.append((spec, folds[i % len(folds)]))
    return cases


def run_bench_case(case: tuple[GenSpec, int], limit: int = 12) -> BenchRow:
    spec, m = case
    graph = generate(spec)
    opt = exact_min_cds(graph, m, node_limit=limit).cost if graph.n <= limit else None
    started = time.perf_counter()
    solution = solve_with_bound(graph, m, opt)
    wall = time.perf_counter() - started
    cert = certify(graph, m, solution.selected, opt, solution.trace)
    searches = solution.trace.search_seconds
    return BenchRow(
        model=spec.model,
        n=graph.n,
        edges=graph.edge_count,
        m=m,
        delta_max=max_degree(graph),
        cost_model=spec.cost_model,
        seed=spec.seed,
        iterations=solution.trace.iteration_count,
        feasible=cert.feasible,
        greedy_cost=cert.greedy_cost,
        opt_cost=cert.opt_cost,
        ratio=cert.empirical_ratio,
        coefficient=cert.bound_coefficient,
        bound_ok=cert.bound_satisfied,
        wall_seconds=wall,
        search_seconds=sum(searches) / len(searches),
    )


def run_bench(cases: Sequence[tuple[GenSpec, int]], limit: int = 12, workers: Optional[int] = None) -> list[BenchRow]:
    """Run every case; results keep input order regardless of parallelism."""
    workers = worker_count() if workers is None else workers
    if workers <= 1:
        return [run_bench_case(case, limit) for case in cases]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_bench_case, cases, [limit] * len(cases)))


def run_scaling(sizes: Sequence[int] = (100, 200, 400, 800), seed: int = 0, m: int = 1, degree: int = 8) -> list[ScalingRow]:
    """Mean per-iteration star-search time on sparse G(n, degree/n) graphs."""
    rows = []
    for n in sizes:
        graph = generate(GenSpec("gnp", n, Fraction(degree, n), cost_model="uniform", seed=seed + n))
        started = time.perf_counter()
        solution = solve_with_bound(graph, m)
        wall = time.perf_counter() - started
        searches = solution.trace.search_seconds
        rows.append(
            ScalingRow(n, graph.edge_count, m, solution.trace.iteration_count, sum(searches) / len(searches), wall)
        )
    return rows


def scaling_exponent(rows: Sequence[ScalingRow]) -> float:
    """Least-squares slope of log(search time) against log(n)."""
    xs = [math.log(r.n) for r in rows]
    ys = [math.log(r.search_seconds) for r in rows]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


TIMING_COLUMNS = ("wall_seconds", "search_seconds")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def format_table(rows: Sequence, timings: bool = True) -> str:
    """Tab-delimited table of dataclass rows; timing columns optional."""
    if not rows:
        return ""
    columns = [k for k in asdict(rows[0]) if timings or k not in TIMING_COLUMNS]
    header = [("coefficient_2H(dmax+m-1)" if c == "coefficient" else c) for c in columns]
    out = io.StringIO()
    writer = csv.writer(out, delimiter="\t", lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        data = asdict(row)
        writer.writerow([_cell(data[c]) for c in columns])
    return out.getvalue()
