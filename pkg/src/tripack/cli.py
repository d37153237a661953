"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
3 size budget exceeded.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .bounds import claim_r2_check, conjecture_nice_check, f_value, g_value, k_value, trianglefree_check
from .errors import ContractError, ParseError, SizeError, TraceError
from .explorer import CHECKS, exhaustive_sweep, random_sweep
from .generators import RNG_NAME, complete_multipartite, cycle, equality_family, random_k4_free, turan2
from .graph import Graph, is_k4_free, parse_edge_list, parse_graph6
from .oracle import max_packing_exact
from .packing import extract_packing
from .partition import build_greedy_partition
from .symmetrize import check_trace, run_symm_alg

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3

log = logging.getLogger("tripack")


def read_graph(path: str, fmt: str = "auto") -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    if fmt == "auto":
        body = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        fmt = "edgelist" if body and len(body[0].split()) == 2 else "graph6"
    if fmt == "graph6":
        body = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if len(body) != 1:
            raise ParseError(f"expected exactly one graph6 line, found {len(body)}")
        return parse_graph6(body[0])
    return parse_edge_list(text)


def emit_graph(G: Graph, fmt: str, comment: str) -> str:
    if fmt == "graph6":
        return f"# {comment}\n{G.to_graph6()}\n"
    return G.to_edge_list(comment)


# ---------------------------------------------------------------- subcommands


def cmd_verify(args) -> int:
    G = read_graph(args.file, args.format)
    P = build_greedy_partition(G)
    k = k_value(G)
    f = f_value(G, P.r)
    rows = [
        ("n", G.n), ("e", G.edge_count), ("t", G.triangle_count), ("r", P.r),
        ("4k", k.q), ("k", str(k)), ("ceil_k", k.ceil), ("4f", f.q),
        ("theorem4", "PASS" if f.q <= 0 else "FAIL"),
    ]
    ok = f.q <= 0
    k4free = is_k4_free(G)
    if k4free:
        packing = extract_packing(G, P)
        passed = packing.size >= k.ceil
        ok &= passed
        rows += [("packing_size", packing.size), ("theorem2", "PASS" if passed else "FAIL")]
        if args.oracle:
            te = max_packing_exact(G)
            rows.append(("oracle_max", te))
            ok &= te >= max(k.ceil, packing.size)
    else:
        rows.append(("theorem2", "N/A (graph contains K4)"))
    if args.claims:
        rows.append(("4g", g_value(G, P.r).q))
        if k4free:
            rows.append(("claim9", "PASS" if claim_r2_check(G, P) else "FAIL"))
            ok &= claim_r2_check(G, P)
            rows.append(("conjecture8", "holds" if conjecture_nice_check(G, P) else "COUNTEREXAMPLE"))
        if G.triangle_count == 0:
            rows.append(("claim10", "PASS" if trianglefree_check(G, P) else "FAIL"))
            ok &= trianglefree_check(G, P)
    for key, value in rows:
        print(f"{key}\t{value}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_extract(args) -> int:
    G = read_graph(args.file, args.format)
    packing = extract_packing(G, build_greedy_partition(G))
    payload = packing.to_json()
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)
    print(f"packing size {packing.size} (bound ceil(t/r) = {packing.bound})", file=sys.stderr)
    return EXIT_OK


def cmd_symmetrize(args) -> int:
    G = read_graph(args.file, args.format)
    P = build_greedy_partition(G)
    trace = run_symm_alg(G, P)
    if args.trace:
        Path(args.trace).write_text(trace.to_json(indent=2) + "\n")
    try:
        check_trace(trace, G, P)
        verdict = "verified"
    except TraceError as exc:
        print(f"trace verification failed: {exc}", file=sys.stderr)
        verdict = "FAILED"
    chain = " <= ".join(f"{s.f4}/4" for s in trace.steps if s.kind in ("start", "subround-end"))
    print(f"rounds\t{len(trace.rounds)}")
    print(f"outcome\t{trace.outcome}")
    print(f"f_chain\t{chain} <= 0")
    print(f"f0\t{trace.start_f4 / 4:g}")
    print(f"trace\t{verdict}")
    return EXIT_OK if verdict == "verified" else EXIT_FAIL


def cmd_oracle(args) -> int:
    G = read_graph(args.file, args.format)
    print(max_packing_exact(G))
    return EXIT_OK


def cmd_gen(args) -> int:
    p = args.params
    family = args.family
    try:
        if family == "turan2":
            G = turan2(int(p[0]))
        elif family == "multipartite":
            G = complete_multipartite([int(x) for x in p])
        elif family == "cycle":
            G = cycle(int(p[0]))
        elif family == "complete":
            G = Graph.complete(int(p[0]))
        elif family == "equality":
            G = equality_family(int(p[0]), parse_graph6(p[1]))
        elif family == "random":
            G = random_k4_free(int(p[0]), p[1], args.seed)
        else:
            raise ContractError(f"unknown family {family!r}")
    except (IndexError, ValueError) as exc:
        raise ContractError(f"bad parameters for {family}: {exc}") from None
    comment = f"family={family} params={' '.join(p)}"
    if family == "random":
        comment += f" seed={args.seed} rng={RNG_NAME}"
    sys.stdout.write(emit_graph(G, args.format, comment))
    return EXIT_OK


def cmd_explore(args) -> int:
    checks = args.checks.split(",") if args.checks else None
    if args.mode == "exhaustive":
        report = exhaustive_sweep(args.n, checks, oracle_every=args.oracle_every, jobs=args.jobs,
                                  keep_rows=bool(args.tsv))
    else:
        report = random_sweep(args.n, args.count, args.seed, checks, oracle_every=args.oracle_every,
                              keep_rows=bool(args.tsv))
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.tsv:
        Path(args.tsv).write_text(report.to_tsv())
    if report.counterexamples:
        print(f"conjecture8: {report.counterexamples} counterexample candidate(s); see witnesses",
              file=sys.stderr)
    if report.blocking_failures:
        print(f"{report.blocking_failures} failure(s) of proven checks", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tripack", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p):
        p.add_argument("file", help="edge-list or graph6 file ('-' for stdin)")
        p.add_argument("--format", choices=["auto", "edgelist", "graph6"], default="auto")

    p = sub.add_parser("verify", help="check the triangle bounds on one graph")
    graph_input(p)
    p.add_argument("--oracle", action="store_true", help="also compute the exact packing number")
    p.add_argument("--claims", action="store_true", help="add the edge-bound claims and the conjecture")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extract", help="write the residue-class triangle packing")
    graph_input(p)
    p.add_argument("--out", help="JSON output path (default stdout)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("symmetrize", help="run and verify the symmetrization algorithm")
    graph_input(p)
    p.add_argument("--trace", help="write the trace JSON here")
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("oracle", help="exact maximum edge-disjoint triangle packing")
    graph_input(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="emit a graph from a named family")
    p.add_argument("family", choices=["turan2", "multipartite", "cycle", "complete", "equality", "random"])
    p.add_argument("params", nargs="*",
                   help="turan2 N | multipartite C1 C2 ... | cycle N | complete N | "
                        "equality R INNER_GRAPH6 | random N EDGE_PROB")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["edgelist", "graph6"], default="edgelist")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("explore", help="exhaustive or random sweep report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-every", type=int, default=0, metavar="N",
                   help="exact packing on every N-th K4-free graph")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="JSON report path (default stdout)")
    p.add_argument("--tsv", help="per-graph TSV rows path")
    p.set_defaults(func=cmd_explore)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (ParseError, ContractError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
