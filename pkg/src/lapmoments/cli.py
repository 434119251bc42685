"""Command-line front end: ``lapmoments {census,moments,bounds,spectrum,gen}``.

Exit status is 0 on success, 1 on a runtime failure (non-convergence,
integer overflow) and 2 on bad input or usage. Warnings are reported but
never change the exit status.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Sequence

from . import __version__
from .bounds import DEFAULT_TOL, bound_report, support_bounds
from .census import StructuralCensus, compute_census, rational_from_json
from .graph import (
    DuplicateEdgeWarning,
    Graph,
    GraphFormatError,
    laplacian_matrix,
    parse_edge_list,
    parse_matrix_market,
    generate,
    to_edge_list,
)
from .moments import MAX_STRUCTURAL_ORDER, MomentSequence, moments_structural, moments_trace
from .numerics import ConvergenceError, sym_eigenvalues
from .report import AnalysisReport, GraphSummary

EXIT_OK, EXIT_RUNTIME, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad input detected after argument parsing."""


class UsageError(Exception):
    """Flag combination rejected after argument parsing."""


# -- input -------------------------------------------------------------------


def _load_graph(args, report: AnalysisReport) -> Graph:
    path = args.file
    fmt = args.format
    if path == "-":
        text = sys.stdin.read()
        if fmt == "auto":
            fmt = "mtx" if text.lstrip().startswith("%%MatrixMarket") else "edges"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
        if fmt == "auto":
            fmt = "mtx" if path.endswith(".mtx") else "edges"
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DuplicateEdgeWarning)
        if fmt == "mtx":
            g = parse_matrix_market(text)
        else:
            g = parse_edge_list(text, one_based=args.one_based, nodes=args.nodes)
    for w in caught:
        if issubclass(w.category, DuplicateEdgeWarning):
            report.warn("duplicate_edges", str(w.message))
    report.graph = GraphSummary.of(g)
    if report.graph.components > 1:
        report.warn("disconnected", f"graph has {report.graph.components} connected components")
    return g


def _load_census(path: str) -> StructuralCensus:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if isinstance(data, dict) and "census" in data and "S" not in data:
        data = data["census"]
    try:
        return StructuralCensus.from_dict(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: not a census: {exc!r}") from None


def _parse_moments(tokens: Sequence[str]) -> list:
    vals = []
    for tok in tokens:
        for part in tok.replace(",", " ").split():
            try:
                vals.append(rational_from_json(part))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"not a number: {part!r}") from None
    return vals


# -- commands ----------------------------------------------------------------


def cmd_census(args) -> AnalysisReport:
    rep = AnalysisReport("census")
    g = _load_graph(args, rep)
    rep.census = compute_census(g)
    return rep


def cmd_moments(args) -> AnalysisReport:
    K = args.order
    if K < 1:
        raise UsageError("--order must be >= 1")
    if K > MAX_STRUCTURAL_ORDER and not args.oracle:
        raise UsageError(f"--order {K} exceeds the structural limit {MAX_STRUCTURAL_ORDER}; add --oracle")
    rep = AnalysisReport("moments")
    if args.census_json:
        if args.oracle:
            raise UsageError("--oracle needs a graph, not --census-json")
        rep.census = _load_census(args.census_json)
        g = None
    else:
        g = _load_graph(args, rep)
        rep.census = compute_census(g)
    ms = moments_structural(rep.census)
    k_struct = min(K, MAX_STRUCTURAL_ORDER)
    rep.moments = MomentSequence(ms.n, ms.m[:k_struct])
    if args.oracle:
        rep.oracle = moments_trace(laplacian_matrix(g), K)
        same = rep.oracle.m[:k_struct] == rep.moments.m
        rep.verdict = "exact match" if same else "mismatch"
    return rep


def cmd_bounds(args) -> AnalysisReport:
    rep = AnalysisReport("bounds")
    s, tol = args.s, args.tol
    if s < 1:
        raise UsageError("--s must be >= 1")
    if not tol > 0:
        raise UsageError("--tol must be positive")
    sources = sum(x is not None for x in (args.census_json, args.moments))
    if sources > 1:
        raise UsageError("give at most one of --census-json and --moments")
    if sources and (args.exact or args.oracle_moments):
        raise UsageError("--exact and --oracle-moments need a graph input")
    if args.include_zero:
        rep.warn("gap_not_certified", "zero eigenvalue included: alpha bounds the full spectrum, not lambda2")

    if sources:
        if args.moments is not None:
            if args.nodes is None:
                raise UsageError("--moments needs --nodes N")
            ms = MomentSequence(args.nodes, tuple(_parse_moments(args.moments)))
        else:
            rep.census = _load_census(args.census_json)
            ms = moments_structural(rep.census)
        if ms.n < 2:
            raise InputError("bounds need n >= 2")
        if ms.K < 2 * s + 1:
            raise UsageError(f"s={s} needs {2 * s + 1} moments, have {ms.K}")
        rep.moments = ms
        seq = [float(x) for x in (ms.m if args.include_zero else ms.scaled)]
        # eigenvalues are nonnegative with mean seq[0], so none exceeds n * seq[0]
        upper = max(ms.n * seq[0], 1.0)
        rep.bounds.append(support_bounds(seq, s, tol, upper=upper))
        return rep

    g = _load_graph(args, rep)
    if g.n < 2:
        raise InputError("bounds need a graph with n >= 2")
    if 2 * s + 1 > MAX_STRUCTURAL_ORDER and not args.oracle_moments:
        raise UsageError(f"s={s} needs {2 * s + 1} moments; add --oracle-moments")
    rep.census = compute_census(g)
    rep.moments = moments_trace(laplacian_matrix(g), 2 * s + 1) if args.oracle_moments else moments_structural(rep.census)
    res = bound_report(
        g,
        s,
        tol,
        oracle_moments=args.oracle_moments,
        exact=args.exact,
        include_zero=args.include_zero,
    )
    # the graph-level warning already covers disconnection
    res.warnings = [w for w in res.warnings if w["code"] != "disconnected"]
    rep.bounds.append(res)
    return rep


def cmd_spectrum(args) -> AnalysisReport:
    rep = AnalysisReport("spectrum")
    g = _load_graph(args, rep)
    rep.spectrum = [float(x) for x in sym_eigenvalues(laplacian_matrix(g), backend=args.backend)]
    return rep


def cmd_gen(args) -> str:
    g = generate(args.kind, args.n, args.p, args.seed)
    # a header is needed only when trailing isolated nodes would be lost
    inferred = max((j for _, j in g.edges), default=-1) + 1
    return to_edge_list(g, header=inferred != g.n)


# -- parser ------------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", default="-", help="graph file, '-' or omitted for stdin")
    p.add_argument("--format", choices=("auto", "edges", "mtx"), default="auto")
    p.add_argument("--one-based", action="store_true", help="edge-list ids start at 1")
    p.add_argument("--nodes", type=int, default=None, help="node count (keeps isolated trailing nodes)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of aligned text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lapmoments",
        description="Laplacian spectral moments from local graph structure, and moment bounds on the spectrum.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="degree power sums, cycle counts and correlations")
    _add_input(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("moments", help="structural moments, optionally checked against trace(L^k)")
    _add_input(p)
    p.add_argument("--order", type=int, default=MAX_STRUCTURAL_ORDER, help="number of moments K")
    p.add_argument("--oracle", action="store_true", help="also compute exact trace moments and compare")
    p.add_argument("--census-json", metavar="PATH", help="read a census instead of a graph")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("bounds", help="moment bounds alpha >= lambda2 and beta <= lambda_n")
    _add_input(p)
    p.add_argument("--s", type=int, default=2, help="relaxation order (needs 2s+1 moments)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="bisection tolerance")
    p.add_argument("--oracle-moments", action="store_true", help="use exact trace moments (allows s > 2)")
    p.add_argument("--exact", action="store_true", help="also report lambda2 and lambda_n")
    p.add_argument("--include-zero", action="store_true", help="bound the full spectrum, zero eigenvalue included")
    p.add_argument("--census-json", metavar="PATH", help="read a census instead of a graph")
    p.add_argument("--moments", nargs="+", metavar="M", help="moments m_1..m_K directly (with --nodes)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("spectrum", help="sorted Laplacian eigenvalues")
    _add_input(p)
    p.add_argument("--backend", choices=("jacobi", "lapack"), default="jacobi")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("kind", choices=("ring", "path", "complete", "star", "er", "erdos_renyi"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=None, help="edge probability (er)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen":
        try:
            sys.stdout.write(cmd_gen(args))
        except ValueError as exc:
            parser.error(str(exc))
        return EXIT_OK
    try:
        rep = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (InputError, GraphFormatError) as exc:
        print(f"lapmoments: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, OverflowError) as exc:
        print(f"lapmoments: runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as exc:
        print(f"lapmoments: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(rep.to_json())
    elif rep.command == "spectrum":
        print("\n".join(f"{x:.12g}" for x in rep.spectrum))
        for w in rep.all_warnings():
            print(f"warning: [{w['code']}] {w['message']}", file=sys.stderr)
    else:
        print(rep.format_text())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
