"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 invalid instance, 4 internal
invariant breach, 5 instance too large for the oracle, 6 claimed solution
infeasible, 7 approximation bound violated.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction

from . import __version__
from .bench import bench_specs, format_table, run_bench, run_scaling, scaling_exponent
from .exact import TooLarge, exact_min_cds
from .formats import (
    ParseError,
    ResultFile,
    dumps,
    format_instance,
    read_instance,
    result_from_json,
    result_to_json,
)
from .generate import GaveUp, GenSpec, generate
from .graph import GraphError
from .lemmas import lemma_suite
from .solver import InvariantBreach, greedy_solve
from .verify import MismatchedInstance, certify, format_fraction, parse_fraction

log = logging.getLogger("cds_forge")

EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_INVARIANT = 4
EXIT_TOO_LARGE = 5
EXIT_INFEASIBLE = 6
EXIT_BOUND = 7

ORACLE_FORMAT = "cds-forge-oracle/1"


def _emit(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load(path, m_override=None):
    instance = read_instance(path)
    m = instance.m
    if m_override is not None and m_override != m:
        log.warning("overriding header fold m=%d with --m %d", m, m_override)
        m = m_override
    return instance.graph, m


def _trace_table(trace) -> str:
    lines = ["iteration\tcenter\tfeet\tgain\tcost\tunit_price\tf_before\tf_after"]
    for i, it in enumerate(trace.iterations, start=1):
        feet = ",".join(map(str, it.star.feet))
        lines.append(
            f"{i}\t{it.star.center}\t{feet}\t{it.gain}\t{format_fraction(it.cost)}"
            f"\t{format_fraction(it.unit_price)}\t{it.f_before}\t{it.f_after}"
        )
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    graph, m = _load(args.instance, args.m)
    started = time.perf_counter()
    selected, trace = greedy_solve(graph, m)
    elapsed = time.perf_counter() - started
    cert = certify(graph, m, selected, trace=trace)
    timings = None
    if args.timings:
        timings = {"solve_seconds": elapsed, "search_seconds_total": sum(trace.search_seconds)}
    _emit(result_to_json(ResultFile(trace, cert, timings)), args.out)
    if args.trace:
        _emit(_trace_table(trace), args.trace)
    return 0


def _oracle_doc(result, n: int, m: int) -> dict:
    return {
        "format": ORACLE_FORMAT,
        "n": n,
        "m": m,
        "optimum": list(result.optimum),
        "cost": format_fraction(result.cost),
        "subsets_examined": result.subsets_examined,
    }


def cmd_oracle(args) -> int:
    graph, m = _load(args.instance, args.m)
    result = exact_min_cds(graph, m, node_limit=args.limit)
    _emit(dumps(_oracle_doc(result, graph.n, m)), args.out)
    return 0


def cmd_verify(args) -> int:
    instance = read_instance(args.instance)
    with open(args.result, encoding="utf-8") as fh:
        result = result_from_json(fh.read())
    graph, m = instance.graph, result.trace.m
    if result.trace.n != graph.n:
        raise MismatchedInstance(f"result is for n={result.trace.n}, instance has n={graph.n}")
    if result.trace.total_cost != graph.total_cost(result.trace.selected):
        log.warning("result total_cost %s disagrees with its selected nodes; using the recomputed cost",
                    format_fraction(result.trace.total_cost))

    opt = None
    if args.oracle_result:
        with open(args.oracle_result, encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("format") != ORACLE_FORMAT:
            raise ParseError("not an oracle document")
        if doc["n"] != graph.n or doc["m"] != m:
            raise MismatchedInstance("oracle document is for a different instance")
        opt = parse_fraction(doc["cost"])
    elif args.oracle:
        opt = exact_min_cds(graph, m, node_limit=args.limit).cost

    cert = certify(graph, m, result.trace.selected, opt)
    sys.stdout.write(dumps(cert.to_dict()))
    if not cert.feasible:
        log.error("claimed solution is not a connected %d-fold dominating set", m)
        return EXIT_INFEASIBLE
    if cert.bound_satisfied is False:
        log.error("approximation bound violated: %s > %s * %s",
                  cert.greedy_cost, cert.bound_coefficient, cert.opt_cost)
        return EXIT_BOUND
    return 0


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(
            args.model,
            args.n,
            Fraction(args.param),
            cost_model=args.cost,
            cost_lo=args.cost_lo,
            cost_hi=args.cost_hi,
            seed=args.seed,
        )
    except ValueError as exc:
        raise ParseError(f"bad generator flags: {exc}") from None
    graph = generate(spec)
    comment = (
        f"generated model={spec.model} n={spec.n} param={format_fraction(spec.param)} "
        f"cost={spec.cost_model}[{spec.cost_lo},{spec.cost_hi}] seed={spec.seed}"
    )
    _emit(format_instance(graph, args.m, [comment]), args.out)
    return 0


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def cmd_bench(args) -> int:
    cases = bench_specs(args.count, args.seed, args.n_min, args.n_max, _int_list(args.m))
    rows = run_bench(cases, limit=args.limit)
    _emit(format_table(rows, timings=args.timings), args.out)

    scaling = []
    if args.scaling:
        scaling = run_scaling(_int_list(args.scaling), seed=args.seed)
        exponent = scaling_exponent(scaling)
        log.info("star-search time grows like n^%.2f", exponent)
        if args.scaling_out:
            _emit(format_table(scaling, timings=True), args.scaling_out)
        else:
            sys.stderr.write(format_table(scaling))
            sys.stderr.write(f"# fitted exponent {exponent:.3f}\n")

    if args.figures:
        from .plotting import render_bench_figures

        for path in render_bench_figures(rows, args.figures, scaling):
            log.info("wrote %s", path)

    bad = [r for r in rows if not r.feasible or r.bound_ok is False]
    if any(not r.feasible for r in bad):
        return EXIT_INFEASIBLE
    return EXIT_BOUND if bad else 0


def cmd_lemmas(args) -> int:
    if args.trials < 1:
        raise ParseError("--trials must be at least 1")
    report = lemma_suite(args.seed, args.trials)
    _emit(dumps(report.to_dict()), args.out)
    return 0 if report.ok else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cds-forge",
        description="Greedy minimum-weight connected m-fold dominating sets",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the greedy solver on an instance")
    p.add_argument("instance")
    p.add_argument("--m", type=int, help="override the fold given in the instance header")
    p.add_argument("-o", "--out", help="result file (default: stdout)")
    p.add_argument("--trace", help="also write the iteration trace as TSV")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    p.add_argument("instance")
    p.add_argument("--m", type=int)
    p.add_argument("--limit", type=int, default=20, help="largest n accepted (default 20)")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="certify a result file against its instance")
    p.add_argument("instance")
    p.add_argument("result")
    p.add_argument("--oracle", action="store_true", help="compute the optimum and check the bound")
    p.add_argument("--oracle-result", help="read the optimum from an oracle document instead")
    p.add_argument("--limit", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--model", choices=("gnp", "unit-disk"), default="gnp")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", "--radius", dest="param", required=True,
                   help="edge probability (gnp) or radius (unit-disk); exact decimal or a/b")
    p.add_argument("--cost", choices=("unit", "uniform", "exponential"), default="unit")
    p.add_argument("--cost-lo", type=int, default=1)
    p.add_argument("--cost-hi", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=1, help="fold written to the header")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="batch greedy-versus-optimum table")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--m", default="1,2,3", help="comma-separated folds to cycle through")
    p.add_argument("--limit", type=int, default=12, help="run the oracle up to this n")
    p.add_argument("-o", "--out", help="TSV table (default: stdout)")
    p.add_argument("--no-timings", dest="timings", action="store_false",
                   help="drop timing columns so output is byte-reproducible")
    p.add_argument("--scaling", help="comma-separated sizes for the star-search timing sweep")
    p.add_argument("--scaling-out", help="TSV table for the timing sweep (default: stderr)")
    p.add_argument("--figures", help="directory for PNG figures")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("lemmas", help="randomized structural property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_lemmas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ParseError, OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except (GraphError, MismatchedInstance, GaveUp) as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    except InvariantBreach as exc:
        log.error("internal invariant breach: %s", exc)
        return EXIT_INVARIANT
    except TooLarge as exc:
        log.error("%s", exc)
        return EXIT_TOO_LARGE


if __name__ == "__main__":
    sys.exit(main())
