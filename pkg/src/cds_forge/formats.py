"""Instance and result file formats.

Instance files are line oriented ASCII::

    # optional comments
    cds <n> <edge_count> <m>
    node <id> <num>/<den>        (n lines)
    edge <a> <b>                 (edge_count lines)

Result files are JSON documents.  Every rational is written as a
``"num/den"`` string; no decimal floats cross the file boundary except the
optional ``timings`` block.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .graph import WeightedGraph, build_graph
from .solver import Iteration, SolveTrace
from .stars import Star
from .verify import Certificate, format_fraction, parse_fraction

__all__ = [
    "ParseError",
    "Instance",
    "parse_instance",
    "format_instance",
    "read_instance",
    "write_instance",
    "ResultFile",
    "result_to_json",
    "result_from_json",
    "dumps",
]

RESULT_FORMAT = "cds-forge-result/1"


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Instance:
    graph: WeightedGraph
    m: int


def _parse_cost(token: str, line: int) -> Fraction:
    num, sep, den = token.partition("/")
    try:
        numerator = int(num)
        denominator = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"bad cost {token!r}", line) from None
    if denominator == 0:
        raise ParseError(f"zero denominator in cost {token!r}", line)
    return Fraction(numerator, denominator)


def _int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"bad {what} {token!r}", line) from None


def parse_instance(text: str) -> Instance:
    """Parse an instance document.

    Syntax problems raise :class:`ParseError`; semantic problems (bad edges,
    non-positive costs, disconnected graph) raise the
    :class:`~cds_forge.graph.GraphError` subclasses from graph validation.
    """
    header = None
    costs: dict[int, Fraction] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if header is None:
            if kind != "cds" or len(parts) != 4:
                raise ParseError("expected header 'cds <n> <edge_count> <m>'", lineno)
            header = tuple(_int(t, "header field", lineno) for t in parts[1:])
            if header[0] < 1 or header[1] < 0 or header[2] < 1:
                raise ParseError("header needs n >= 1, edge_count >= 0, m >= 1", lineno)
            continue
        if kind == "node" and len(parts) == 3:
            v = _int(parts[1], "node id", lineno)
            if not 0 <= v < header[0]:
                raise ParseError(f"node id {v} outside 0..{header[0] - 1}", lineno)
            if v in costs:
                raise ParseError(f"node {v} declared twice", lineno)
            costs[v] = _parse_cost(parts[2], lineno)
        elif kind == "edge" and len(parts) == 3:
            edges.append((_int(parts[1], "node id", lineno), _int(parts[2], "node id", lineno)))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    if header is None:
        raise ParseError("missing header")
    n, edge_count, m = header
    if len(costs) != n:
        raise ParseError(f"header declares {n} nodes, found {len(costs)}")
    if len(edges) != edge_count:
        raise ParseError(f"header declares {edge_count} edges, found {len(edges)}")
    graph = build_graph(edges, [costs[v] for v in range(n)])
    return Instance(graph, m)


def format_instance(graph: WeightedGraph, m: int, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    edges = graph.edges()
    lines.append(f"cds {graph.n} {len(edges)} {m}")
    lines.extend(f"node {v} {format_fraction(c)}" for v, c in enumerate(graph.costs))
    lines.extend(f"edge {a} {b}" for a, b in edges)
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="ascii") as fh:
        return parse_instance(fh.read())


def write_instance(path, graph: WeightedGraph, m: int, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_instance(graph, m, comments))


@dataclass
class ResultFile:
    trace: SolveTrace
    certificate: Optional[Certificate] = None
    timings: Optional[dict] = None
    extra: dict = field(default_factory=dict)


def _fraction_or_none(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else format_fraction(value)


def result_to_dict(result: ResultFile) -> dict:
    trace = result.trace
    doc = {
        "format": RESULT_FORMAT,
        "n": trace.n,
        "m": trace.m,
        "selected": list(trace.selected),
        "total_cost": format_fraction(trace.total_cost),
        "iteration_count": trace.iteration_count,
        "singleton_fallback": trace.singleton_fallback,
        "iterations": [
            {
                "center": it.star.center,
                "feet": list(it.star.feet),
                "gain": it.gain,
                "cost": format_fraction(it.cost),
                "unit_price": format_fraction(it.unit_price),
                "f_before": it.f_before,
                "f_after": it.f_after,
            }
            for it in trace.iterations
        ],
        "certificate": None if result.certificate is None else result.certificate.to_dict(),
    }
    doc.update(result.extra)
    if result.timings is not None:
        doc["timings"] = result.timings
    return doc


def result_from_dict(doc: dict) -> ResultFile:
    if doc.get("format") != RESULT_FORMAT:
        raise ParseError(f"not a result document (format {doc.get('format')!r})")
    try:
        iterations = [
            Iteration(
                Star(it["center"], tuple(it["feet"]), it["gain"], parse_fraction(it["cost"])),
                it["f_before"],
                it["f_after"],
            )
            for it in doc["iterations"]
        ]
        trace = SolveTrace(
            n=doc["n"],
            m=doc["m"],
            iterations=iterations,
            selected=tuple(doc["selected"]),
            total_cost=parse_fraction(doc["total_cost"]),
            singleton_fallback=doc.get("singleton_fallback", False),
        )
        cert = doc.get("certificate")
        known = {
            "format", "n", "m", "selected", "total_cost", "iteration_count",
            "singleton_fallback", "iterations", "certificate", "timings",
        }
        return ResultFile(
            trace,
            None if cert is None else Certificate.from_dict(cert),
            doc.get("timings"),
            {k: v for k, v in doc.items() if k not in known},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed result document: {exc}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def result_to_json(result: ResultFile) -> str:
    return dumps(result_to_dict(result))


def result_from_json(text: str) -> ResultFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"result is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("result document must be a JSON object")
    return result_from_dict(doc)
