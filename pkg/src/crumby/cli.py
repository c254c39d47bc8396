"""Command-line entry point: ``crumby <subcommand> ...``.

Exit status: 0 on success or a confirmed claim, 1 when a claim is refuted
(a coloring fails verification, a repro check fails), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .construct import color_gp, color_gp_even, color_gp_odd
from .families import (
    BUNDLED, NAMED_GRAPHS, GPParams, TreeSpec, build_gp, build_toroidal, bundled_graphs, named_graph,
)
from .graphcore import Coloring, Graph, GraphFormatError, export_dot, read_graph6_lines, write_graph6
from .repro import repro_all
from .search import (
    Custom, InducedMatching, Mode, SearchGoal, SearchSizeError, census_rbipm, census_table,
    search_colorings,
)
from .treecolor import RULE_SETS, UnhandledCase, InvariantBroken, color_tree_traced
from .verify import CrumbyPredicate, verify_crumby, verify_induced_matching

log = logging.getLogger("crumby")

OK, REFUTED, USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad flags or input; reported on one line with exit status 2."""


# ---------------------------------------------------------------- graph specifiers


def _ints(parts: Sequence[str], spec: str) -> list[int]:
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise UsageError(f"expected integers in graph spec {spec!r}") from None


def parse_graph_spec(spec: str) -> Graph:
    """``named:<name>``, ``gp:<n>:<k>``, ``torus:<m>:<n>``, ``g6:<file>[:line]``, ``tree:<file>``."""
    kind, _, rest = spec.partition(":")
    if not rest:
        raise UsageError(f"graph spec {spec!r} must look like kind:args (named:, gp:, torus:, g6:, tree:)")
    if kind == "named":
        if rest.lower() not in NAMED_GRAPHS:
            raise UsageError(f"unknown graph name {rest!r}; choose from {', '.join(NAMED_GRAPHS)}")
        return named_graph(rest)
    if kind == "gp":
        nums = _ints(rest.split(":"), spec)
        if len(nums) != 2:
            raise UsageError("gp spec is gp:<n>:<k>")
        try:
            return build_gp(GPParams(*nums))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if kind == "torus":
        nums = _ints(rest.split(":"), spec)
        if len(nums) != 2:
            raise UsageError("torus spec is torus:<m>:<n>")
        try:
            return build_toroidal(*nums)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if kind == "g6":
        path, line_no = rest, 1
        head, sep, tail = rest.rpartition(":")
        if sep and tail.isdigit():
            path, line_no = head, int(tail)
        graphs = read_graph6_lines(_read(path).splitlines())
        if not 1 <= line_no <= len(graphs):
            raise UsageError(f"{path} has {len(graphs)} graphs; line {line_no} is out of range (1-based)")
        return graphs[line_no - 1]
    if kind == "tree":
        return _read_tree(rest).to_graph()
    raise UsageError(f"unknown graph spec kind {kind!r}; use named:, gp:, torus:, g6: or tree:")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_tree(path: str) -> TreeSpec:
    return TreeSpec.from_json(_read(path))


def _read_coloring(arg: str) -> Coloring:
    """A coloring file (JSON or a bare R/B line) or an inline R/B string."""
    text = _read(arg) if Path(arg).exists() else arg
    text = text.strip()
    if text.startswith("{"):
        return Coloring.from_json(text)
    return Coloring.from_string(text)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        print(text)


def _predicate(args: argparse.Namespace) -> CrumbyPredicate:
    return CrumbyPredicate(red_path_bound=args.L, strict_stars=args.strict_stars)


# ---------------------------------------------------------------- subcommands


def cmd_build(args: argparse.Namespace) -> int:
    g = parse_graph_spec(args.graph)
    if args.format == "graph6":
        text = write_graph6(g)
    elif args.format == "dot":
        text = export_dot(g)
    else:
        text = json.dumps({"name": g.name, "n": g.n, "edges": [list(e) for e in g.edges()]})
    _emit(text, args.out)
    return OK


def cmd_color_gp(args: argparse.Namespace) -> int:
    if args.family is not None:
        if args.n is not None:
            raise UsageError("use either --family with --k or --n with --k, not both")
        if args.k < 2:
            raise UsageError("--k must be >= 2")
        p = GPParams.odd(args.k) if args.family == "odd" else GPParams.even(args.k)
        c = color_gp_odd(args.k) if args.family == "odd" else color_gp_even(args.k)
    else:
        if args.n is None:
            raise UsageError("color gp needs --family odd|even or --n")
        try:
            p = GPParams(args.n, args.k)
            c = color_gp(args.n, args.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    g = build_gp(p)
    status = OK
    if args.verify:
        report = verify_crumby(g, c, CrumbyPredicate(strict_stars=args.strict_stars))
        if not report.valid:
            print(report.to_json(), file=sys.stderr)
            status = REFUTED
    _emit(export_dot(g, c) if args.dot else c.to_json(), args.out)
    return status


def cmd_color_tree(args: argparse.Namespace) -> int:
    t = _read_tree(args.input)
    try:
        c, trace = color_tree_traced(t, rules=args.rules)
    except (UnhandledCase, InvariantBroken) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return REFUTED
    out = json.loads(c.to_json())
    if args.trace:
        out["trace"] = trace
    _emit(json.dumps(out), args.out)
    return OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = parse_graph_spec(args.graph)
    c = _read_coloring(args.coloring)
    if len(c) != g.n:
        raise UsageError(f"coloring has {len(c)} vertices but the graph has {g.n}")
    if args.goal == "rbipm":
        report = verify_induced_matching(g, c, require_perfect=True)
    else:
        report = verify_crumby(g, c, _predicate(args))
    _emit(report.to_json(), args.out)
    return OK if report.valid else REFUTED


def _sizes(text: Optional[str], flag: str) -> frozenset[int]:
    if text is None:
        raise UsageError(f"--goal custom needs {flag}")
    try:
        return frozenset(int(x) for x in text.split(",") if x)
    except ValueError:
        raise UsageError(f"{flag} takes comma-separated integers, got {text!r}") from None


def cmd_search(args: argparse.Namespace) -> int:
    g = parse_graph_spec(args.graph)
    if args.goal == "crumby":
        pred = _predicate(args)
    elif args.goal == "rbipm":
        pred = InducedMatching(True)
    else:
        try:
            pred = Custom(_sizes(args.blue_sizes, "--blue-sizes"), _sizes(args.red_sizes, "--red-sizes"))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.goal != "custom" and (args.blue_sizes or args.red_sizes):
        raise UsageError("--blue-sizes/--red-sizes only apply to --goal custom")
    goal = SearchGoal(pred, Mode(args.mode), symmetry_fix=args.symmetry_fix)
    try:
        stats = search_colorings(g, goal, jobs=args.jobs, split_depth=args.split_depth, checkpoint=args.checkpoint)
    except SearchSizeError as exc:
        raise UsageError(str(exc)) from None
    out = {"graph": g.name or write_graph6(g), "n": g.n, **stats.to_dict()}
    _emit(json.dumps(out), args.out)
    return OK


def cmd_census(args: argparse.Namespace) -> int:
    if (args.input is None) == (args.corpus is None):
        raise UsageError("census needs exactly one of --in <file.g6> or --corpus <name>")
    if args.input:
        graphs = read_graph6_lines(_read(args.input).splitlines())
    else:
        graphs = bundled_graphs(args.corpus)
    rows = census_rbipm(graphs)
    if args.format == "json":
        text = json.dumps([r.to_dict() for r in rows])
    else:
        text = census_table(rows)
    _emit(text, args.out)
    return OK


def cmd_repro(args: argparse.Namespace) -> int:
    results = repro_all(include_long=args.include_long)
    if args.json:
        _emit(json.dumps([r.to_dict() for r in results], sort_keys=True), args.out)
    else:
        _emit("\n".join(r.line() for r in results), args.out)
    return OK if all(r.passed for r in results) else REFUTED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crumby", description="Crumby colorings of subcubic graphs.")
    ap.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def out_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument("-o", "--out", help="write output to this file instead of stdout")

    def predicate_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--L", type=int, default=3, help="forbid red paths with this many edges (default 3)")
        p.add_argument("--strict-stars", action="store_true", help="require red components to be stars with 1-3 edges")

    p = sub.add_parser("build", help="emit a graph")
    p.add_argument("--graph", required=True, help="graph spec, e.g. named:petersen, gp:9:4, torus:5:5")
    p.add_argument("--format", choices=("graph6", "dot", "json"), default="graph6")
    out_flag(p)
    p.set_defaults(func=cmd_build)

    color = sub.add_parser("color", help="construct a coloring").add_subparsers(dest="target", required=True)
    p = color.add_parser("gp", help="coloring of GP(2k+1,k) or GP(4k,2k-1)")
    p.add_argument("--family", choices=("odd", "even"))
    p.add_argument("--n", type=int, help="outer cycle length (alternative to --family)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="verify and exit 1 on failure")
    p.add_argument("--strict-stars", action="store_true")
    p.add_argument("--dot", action="store_true", help="emit colored DOT instead of JSON")
    out_flag(p)
    p.set_defaults(func=cmd_color_gp)

    p = color.add_parser("tree", help="BFS coloring of a subcubic tree")
    p.add_argument("--in", dest="input", required=True, help='tree JSON: {"parents": [-1, 0, ...]}')
    p.add_argument("--rules", choices=RULE_SETS, default="extended")
    p.add_argument("--trace", action="store_true", help="include the case applied at each step")
    out_flag(p)
    p.set_defaults(func=cmd_color_tree)

    p = sub.add_parser("verify", help="check a coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True, help="coloring JSON file, R/B file, or inline R/B string")
    p.add_argument("--goal", choices=("crumby", "rbipm"), default="crumby")
    predicate_flags(p)
    out_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive coloring search")
    p.add_argument("--graph", required=True)
    p.add_argument("--goal", choices=("crumby", "rbipm", "custom"), default="crumby")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="first")
    predicate_flags(p)
    p.add_argument("--blue-sizes", help="allowed blue component sizes, e.g. 1,2")
    p.add_argument("--red-sizes", help="allowed red component sizes, e.g. 2,3")
    p.add_argument("--symmetry-fix", action="store_true", help="pin the first vertex for color-symmetric goals")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--split-depth", type=int, default=8)
    p.add_argument("--checkpoint", help="JSON file for resumable progress")
    out_flag(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("census", help="RBIPM census of a graph6 file")
    p.add_argument("--in", dest="input", help="graph6 file")
    p.add_argument("--corpus", choices=sorted(BUNDLED), help="bundled corpus")
    p.add_argument("--format", choices=("table", "json"), default="table")
    out_flag(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("repro", help="run the reproduction suite")
    p.add_argument("--include-long", action="store_true", help="add the C5xC7 search")
    p.add_argument("--json", action="store_true")
    out_flag(p)
    p.set_defaults(func=cmd_repro)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, GraphFormatError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"crumby: error: {msg}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
