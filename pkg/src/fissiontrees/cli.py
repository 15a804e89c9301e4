"""Command-line interface.

Exit codes: 0 on success, 1 when a verification or comparison finds a
mismatch, 2 for usage and input errors.  Output is deterministic: the same
invocation always produces byte-identical text.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import counting, enumeration, graphs, oeis, trees, verify
from .errors import DomainError, PreconditionError, ResourceLimitError, TreeError

USAGE_ERROR = 2
MISMATCH_ERROR = 1


def _cmd_count(args) -> int:
    table = counting.count_table(args.stat, args.k_max, args.n_max)
    text = counting.RENDERERS[args.format](table)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_enumerate(args) -> int:
    view = trees.MULT if args.mult else trees.LEAFCOUNT
    for tv in enumeration.enum_exact(args.slope, args.leaves, view):
        if args.format == "json":
            sys.stdout.write(json.dumps(tv.to_json_obj()) + "\n")
        else:
            sys.stdout.write(tv.text() + "\n")
    return 0


def _cmd_graph(args) -> int:
    tv = trees.TreeView(trees.parse_tree(args.tree), trees.LEAFCOUNT)
    if args.kind == "fission":
        g = graphs.fission_graph(tv)
    else:
        g = graphs.stokes_quiver(tv)
    if args.legs is not None:
        legs = [int(x) for x in args.legs.split(",") if x.strip() != ""]
        g = graphs.supernova(g, legs)
    if args.format == "json":
        sys.stdout.write(graphs.graph_to_json(g))
    else:
        sys.stdout.write(graphs.to_dot(g))
    return 0


def _cmd_core(args) -> int:
    g = graphs.graph_from_json(Path(args.graph).read_text())
    core, legs = graphs.extract_core(g)
    obj = {"core": graphs.graph_to_json_obj(core), "legs": list(legs)}
    sys.stdout.write(json.dumps(obj) + "\n")
    return 0


def _cmd_verify(args) -> int:
    report = verify.run_suite(args.suite, args.k_max, args.n_max)
    for line in report.lines():
        sys.stdout.write(line + "\n")
    return 0 if report.ok else MISMATCH_ERROR


def _cmd_oeis(args) -> int:
    client = oeis.OeisClient(cache_dir=args.cache_dir, offline=args.offline)
    try:
        cmp = client.compare(args.id, args.terms)
    finally:
        if args.trace:
            for line in client.trace:
                sys.stderr.write(f"trace: {line}\n")
            sys.stderr.write(f"trace: network calls: {client.network_calls}\n")
    if cmp.ok:
        sys.stdout.write(
            f"{cmp.id}: {cmp.compared} terms compared, all match (source: {cmp.source})\n")
        return 0
    sys.stdout.write(
        f"{cmp.id}: mismatch at index {cmp.first_mismatch}: "
        f"local {cmp.expected}, fetched {cmp.actual} (source: {cmp.source})\n")
    return MISMATCH_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fission-trees",
        description="Count and enumerate fission trees and their derived graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="render a (slope, size) table of exact counts")
    p.add_argument("--stat", required=True, choices=counting.STATS)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--out", help="write the table to this file instead of stdout")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("enumerate", help="list all trees with a given slope and size")
    p.add_argument("--slope", type=int, required=True)
    p.add_argument("--leaves", type=int, required=True,
                   help="number of leaves (rank, when --mult is given)")
    p.add_argument("--mult", action="store_true",
                   help="enumerate trees with arbitrary leaf multiplicities")
    p.add_argument("--format", choices=("brackets", "json"), default="brackets")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("graph", help="derive a graph from a tree")
    p.add_argument("--tree", required=True, help="tree in bracket grammar, e.g. '[[2],[1,1]]'")
    p.add_argument("--kind", choices=("fission", "stokes"), default="fission")
    p.add_argument("--legs", help="comma-separated leg lengths to glue on (supernova)")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("core", help="peel the legs off a supernova graph (JSON file)")
    p.add_argument("--graph", required=True, help="path to a graph JSON file")
    p.set_defaults(func=_cmd_core)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oeis", help="cross-check a statistic against an OEIS b-file")
    p.add_argument("--id", required=True, help="sequence id, 'A' followed by six digits")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--offline", action="store_true",
                   help="never touch the network; use cache or bundled snapshots")
    p.add_argument("--cache-dir", default=None,
                   help=f"cache directory (default: ${oeis.CACHE_ENV_VAR} or ~/.cache/fission-trees)")
    p.add_argument("--trace", action="store_true",
                   help="report data sources and network calls on stderr")
    p.set_defaults(func=_cmd_oeis)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TreeError, DomainError, PreconditionError, ResourceLimitError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
