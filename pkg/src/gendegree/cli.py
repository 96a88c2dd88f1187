"""Command-line front end.

Exit codes: 0 success, 1 failed check under ``--strict``, 2 unparsable
input, 3 numeric failure, 64 invalid flags or parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import axioms
from .errors import GenDegreeError, MalformedInputError, NumericError
from .graph import Graph, read_edge_list
from .solver import (
    DEFAULT_K_MAX,
    DEFAULT_TOL,
    centrality_index,
    generalized_degree_exact,
    generalized_degree_neumann,
    solitariness,
)
from .sweep import (
    DEFAULT_PROBES,
    DEFAULT_REFINE_TOL,
    DEFAULT_TIE_TOL,
    Grid,
    fmt,
    rank,
    round15,
    stable_ranking_intervals,
    sweep,
    watersheds,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64

REGULAR_DEFAULT_EPSILON = 0.1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _nonnegative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value >= 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"must be finite and >= 0: {text}")
    return value


def _positive_float(text: str) -> float:
    value = _nonnegative_float(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _edge(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"edge must look like a,b: {text!r}")
    return parts[0], parts[1]


def _grid(text: str) -> Grid:
    try:
        return Grid.parse(text)
    except GenDegreeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gendegree", description="Generalized degree centrality toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, default_format, formats=("csv", "json")):
        p.add_argument("--input", required=True, type=Path, help="edge-list file")
        p.add_argument("--tol", type=_positive_float, default=None, help="tolerance override")
        p.add_argument("--format", choices=formats, default=default_format)
        p.add_argument("--output", type=Path, default=None, help="write here instead of stdout")

    p = sub.add_parser("compute", help="generalized degree and its ranking")
    common(p, "json")
    p.add_argument("--epsilon", type=_nonnegative_float, default=None)

    p = sub.add_parser("sweep", help="centralities over a parameter grid")
    common(p, "csv")
    p.add_argument("--grid", type=_grid, required=True, help="lo:hi:steps[:log|lin]")

    p = sub.add_parser("watershed", help="parameter values where the ranking changes")
    common(p, "json", ("csv", "json", "text"))
    p.add_argument("--grid", type=_grid, default=None,
                   help=f"lo:hi:probes (default 0.01:100:{DEFAULT_PROBES}); probing is logarithmic")
    p.add_argument("--refine-tol", type=_positive_float, default=DEFAULT_REFINE_TOL)

    p = sub.add_parser("check", help="axiom checks")
    common(p, "json", ("json",))
    what = p.add_mutually_exclusive_group()
    what.add_argument("--arm", action="store_true", help="rank monotonicity for --edge")
    what.add_argument("--iic", action="store_true", help="irrelevant-connection toggle of --edge")
    what.add_argument("--scb", type=_positive_int, metavar="N", help="star center base on N nodes")
    what.add_argument("--suite", action="store_true", help="property suite (default)")
    what.add_argument("--falsify", action="store_true", help="random ARM falsification run")
    p.add_argument("--edge", type=_edge, default=None)
    p.add_argument("--epsilon", type=_nonnegative_float, default=None)
    p.add_argument("--grid", type=_grid, default=None, help="parameter values for --suite")
    p.add_argument("--measure", choices=("generalized", "degree"), default="generalized")
    p.add_argument("--strict", action="store_true", help="exit 1 if any check fails")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--graphs", type=_positive_int, default=200)
    p.add_argument("--edits", type=_positive_int, default=20)

    p = sub.add_parser("iterate", help="Neumann-series partial sums")
    common(p, "csv")
    p.add_argument("--epsilon", type=_positive_float, default=None)
    p.add_argument("--k-max", type=_positive_int, default=DEFAULT_K_MAX)

    p = sub.add_parser("solitariness", help="1 - diag((I + alpha L)^-1) baseline")
    common(p, "json")
    p.add_argument("--alpha", type=_positive_float, default=1.0)
    return parser


# -- helpers -------------------------------------------------------------------


def default_epsilon(g: Graph) -> float:
    """Half the reasonable bound, or 0.1 when the bound is unbounded."""
    bound = axioms.reasonable_epsilon_max(g)
    return bound.epsilon_max / 2 if bound.bounded else REGULAR_DEFAULT_EPSILON


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _node(g: Graph, label: str) -> int:
    try:
        return g.index(label)
    except KeyError:
        raise UsageError(f"unknown node {label!r}") from None


def _vector_output(labels, values, ranking, fmt_name, header, extra):
    if fmt_name == "json":
        record = dict(extra)
        record["labels"] = list(labels)
        record["values"] = [round15(v) for v in values]
        record["ranking"] = ranking.labelled(labels)
        return _dump_json(record)
    position = ranking.position()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["node", header, "group"])
    for k, label in enumerate(labels):
        writer.writerow([label, fmt(values[k]), position[k] + 1])
    return buf.getvalue()


# -- commands ------------------------------------------------------------------


def _compute(args, g):
    eps = default_epsilon(g) if args.epsilon is None else args.epsilon
    vec = generalized_degree_exact(g, eps, args.tol or DEFAULT_TOL)
    ranking = rank(vec, DEFAULT_TIE_TOL)
    try:
        index = round15(centrality_index(vec))
    except GenDegreeError:
        index = None
    extra = {"epsilon": round15(eps), "centrality_index": index}
    return _vector_output(g.labels, vec.values, ranking, args.format, "value", extra), EXIT_OK


def _sweep(args, g):
    result = sweep(g, args.grid, DEFAULT_TIE_TOL, args.tol or DEFAULT_TOL)
    if args.format == "csv":
        return result.to_csv(), EXIT_OK
    record = {
        "labels": list(g.labels),
        "points": [
            {
                "epsilon": round15(p.epsilon),
                "values": [round15(v) for v in p.vector.values],
                "ranking": p.ranking.labelled(g.labels),
            }
            for p in result.points
        ],
    }
    return _dump_json(record), EXIT_OK


def _watershed(args, g):
    grid = args.grid or Grid(0.01, 100.0, DEFAULT_PROBES, "log")
    report = watersheds(
        g, grid.lo, grid.hi, grid.steps, args.refine_tol, DEFAULT_TIE_TOL, args.tol or DEFAULT_TOL
    )
    if args.format == "json":
        return report.to_json(), EXIT_OK
    if args.format == "text":
        return stable_ranking_intervals(report), EXIT_OK
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lo", "hi", "ranking"])
    for iv in report.intervals:
        writer.writerow([fmt(iv.lo), fmt(iv.hi), iv.ranking.format(g.labels)])
    return buf.getvalue(), EXIT_OK


def _check(args, g):
    tol = args.tol
    eps = default_epsilon(g) if args.epsilon is None else args.epsilon
    measure = axioms.degree_measure if args.measure == "degree" else None
    if (args.arm or args.iic) and args.edge is None:
        raise UsageError("--arm and --iic need --edge a,b")
    if args.arm:
        i, j = (_node(g, v) for v in args.edge)
        reports = [axioms.check_arm(g, i, j, eps, tol or axioms.DEFAULT_COMPARE_TOL, measure)]
    elif args.iic:
        k, l = (_node(g, v) for v in args.edge)
        reports = [axioms.check_iic(g, k, l, eps, tol or axioms.DEFAULT_COMPARE_TOL, measure)]
    elif args.scb is not None:
        reports = [axioms.check_scb(args.scb, eps, tol or axioms.SCB_CLOSED_FORM_TOL)]
    elif args.falsify:
        result = axioms.arm_falsification(
            seed=args.seed, n_graphs=args.graphs, edits=args.edits,
            tol=tol or axioms.DEFAULT_COMPARE_TOL,
        )
        summary = axioms.AxiomReport(
            "ARM", "pass" if result.passed else "fail", None,
            tol or axioms.DEFAULT_COMPARE_TOL, None,
            {"seed": result.seed, "graphs": result.graphs, "checks": result.checks,
             "violations": len(result.violations)},
        )
        reports = [summary, *result.violations]
    else:
        epsilons = args.grid.values().tolist() if args.grid else [eps]
        reports = axioms.property_suite(g, epsilons, tol or axioms.DEFAULT_SUITE_TOL)
    failed = any(not r.passed for r in reports)
    text = _dump_json([r.to_dict() for r in reports])
    return text, EXIT_CHECK_FAILED if (failed and args.strict) else EXIT_OK


def _iterate(args, g):
    eps = default_epsilon(g) if args.epsilon is None else args.epsilon
    vec, trace = generalized_degree_neumann(g, eps, args.tol or DEFAULT_TOL, args.k_max)
    if not trace.converged:
        print(
            f"warning: not converged after {trace.iterations} terms "
            f"(last term {trace.term_norms[-1]:.3e}, residual {vec.residual:.3e})",
            file=sys.stderr,
        )
    if args.format == "json":
        record = {
            "epsilon": round15(eps),
            "beta": round15(trace.beta),
            "converged": trace.converged,
            "labels": list(g.labels),
            "term_norms": [round15(t) for t in trace.term_norms],
            "partial_sums": [[round15(v) for v in row] for row in trace.partial_sums],
            "residual": round15(vec.residual),
        }
        return _dump_json(record), EXIT_OK
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "term_norm", *g.labels])
    for k, (norm, row) in enumerate(zip(trace.term_norms, trace.partial_sums)):
        writer.writerow([k, fmt(norm), *(fmt(v) for v in row)])
    return buf.getvalue(), EXIT_OK


def _solitariness(args, g):
    vec = solitariness(g, args.alpha)
    ranking = rank(vec.values, args.tol or DEFAULT_TIE_TOL)
    extra = {"alpha": round15(args.alpha)}
    return _vector_output(g.labels, vec.values, ranking, args.format, "value", extra), EXIT_OK


COMMANDS = {
    "compute": _compute,
    "sweep": _sweep,
    "watershed": _watershed,
    "check": _check,
    "iterate": _iterate,
    "solitariness": _solitariness,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        g = read_edge_list(args.input)
    except FileNotFoundError:
        print(f"error: input file not found: {args.input}", file=sys.stderr)
        return EXIT_PARSE
    except (MalformedInputError, UnicodeDecodeError) as exc:
        print(f"error: cannot parse {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        text, status = COMMANDS[args.command](args, g)
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, GenDegreeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
