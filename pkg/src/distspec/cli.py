"""Command-line interface.

Graphs are given as graph6 strings or ``@file:path`` edge-list files. Exit status
is 0 for success or a true verdict, 1 for a false verdict, 2 for bad usage or
input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .canon import are_isomorphic
from .constructions import build_pair, family, family_is_valid, verify_theorem21
from .enumerate import mine
from .exact import char_poly
from .graph import GraphError, distance_matrix, identify, is_bipartite, load_graph, to_graph6
from .numeric import jacobi_eigh
from .switching import (
    apply_switch,
    corollary_pair,
    find_switch_candidates,
    hypothesis_failure,
    make_tuple,
    verify_theorem32,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _graph(spec: str):
    try:
        return load_graph(spec)
    except GraphError as exc:
        raise UsageError(f"cannot read graph {spec!r}: {exc}") from None


def _switch_tuple(g, text: str):
    try:
        s, g1, g2, h1, h2 = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"switch tuple must be 's,g1,g2,h1,h2', got {text!r}") from None
    return make_tuple(g, s, g1, g2, h1, h2)


def _graph_summary(g) -> dict:
    return {"graph6": to_graph6(g), "n": g.n, "edges": g.edge_count}


def cmd_spectrum(args) -> tuple[dict, int]:
    g = _graph(args.graph)
    d = distance_matrix(g)
    values, _ = jacobi_eigh(d)
    return {
        **_graph_summary(g),
        "bipartite": is_bipartite(g),
        "charpoly": char_poly(d),
        "eigenvalues": [float(x) for x in values],
    }, EXIT_OK


def cmd_cospectral(args) -> tuple[dict, int]:
    a, b = _graph(args.first), _graph(args.second)
    pa = char_poly(distance_matrix(a))
    pb = char_poly(distance_matrix(b))
    same = a.n == b.n and pa == pb
    out = {
        "cospectral": same,
        "isomorphic": are_isomorphic(a, b),
        "edges": [a.edge_count, b.edge_count],
        "bipartite": [is_bipartite(a), is_bipartite(b)],
        "charpolys": [pa, pb],
    }
    return out, EXIT_OK if same else EXIT_FALSE


def cmd_identify(args) -> tuple[dict, int]:
    return _graph_summary(identify(_graph(args.g), args.u, _graph(args.k), args.v)), EXIT_OK


def cmd_pair(args) -> tuple[dict, int]:
    gk, hk = build_pair(_graph(args.k), args.v, args.u)
    same = char_poly(distance_matrix(gk)) == char_poly(distance_matrix(hk))
    iso = are_isomorphic(gk, hk)
    out = {
        "GK": to_graph6(gk),
        "HK": to_graph6(hk),
        "edges": [gk.edge_count, hk.edge_count],
        "cospectral": same,
        "isomorphic": iso,
    }
    return out, EXIT_OK if same and not iso else EXIT_FALSE


def cmd_family(args) -> tuple[dict, int]:
    graphs = family(args.k)
    ok = family_is_valid(graphs)
    out = {
        "k": args.k,
        "graphs": [to_graph6(g) for g in graphs],
        "edge_counts": [g.edge_count for g in graphs],
        "valid": ok,
    }
    return out, EXIT_OK if ok else EXIT_FALSE


def cmd_verify_t21(args) -> tuple[dict, int]:
    if args.sweep:
        from .sweep import sweep_graphs, gadget_sweep

        results = gadget_sweep(sweep_graphs(seed=args.seed), workers=args.threads)
        failed = [r.__dict__ for r in results if not r.ok]
        out = {
            "seed": args.seed,
            "instances": len(results),
            "failed": failed,
            "max_residual_after": max(r.max_residual_after for r in results),
            "max_identity_residual": max(r.max_identity_residual for r in results),
            "passed": not failed,
        }
        return out, EXIT_OK if not failed else EXIT_FALSE
    if args.k is None:
        raise UsageError("verify-t21 needs K (and optionally v, u) or --sweep")
    rep = verify_theorem21(_graph(args.k), args.v, args.u, tol=args.tol)
    return rep.to_dict(), EXIT_OK if rep.passed else EXIT_FALSE


def cmd_switch_scan(args) -> tuple[dict, int]:
    g = _graph(args.graph)
    rows = []
    for t in find_switch_candidates(g):
        h = apply_switch(g, t)
        reason = hypothesis_failure(g, h, t)
        row = {**t.to_dict(), "applicable": reason is None}
        if reason is None:
            row["result"] = to_graph6(h)
        else:
            row["reason"] = reason
        rows.append(row)
    return {"graph6": to_graph6(g), "candidates": rows}, EXIT_OK


def cmd_switch_apply(args) -> tuple[dict, int]:
    g = _graph(args.graph)
    t = _switch_tuple(g, args.tuple)
    h = apply_switch(g, t)
    reason = hypothesis_failure(g, h, t)
    return {
        "tuple": t.to_dict(),
        "result": to_graph6(h),
        "edges": [g.edge_count, h.edge_count],
        "hypotheses_hold": reason is None,
        "reason": reason,
    }, EXIT_OK


def cmd_verify_t32(args) -> tuple[dict, int]:
    g = _graph(args.graph)
    t = _switch_tuple(g, args.tuple)
    h = apply_switch(g, t)
    reason = hypothesis_failure(g, h, t)
    if reason is not None:
        return {"tuple": t.to_dict(), "passed": False, "reason": reason}, EXIT_FALSE
    rep = verify_theorem32(g, t, tol=args.tol)
    return {"tuple": t.to_dict(), **rep.to_dict()}, EXIT_OK if rep.passed else EXIT_FALSE


def cmd_corollary(args) -> tuple[dict, int]:
    g = _graph(args.graph)
    t = _switch_tuple(g, args.tuple)
    if args.u in t.switched or not 0 <= args.u < g.n:
        raise UsageError(f"attachment vertex {args.u} must be a non-switched vertex of G")
    try:
        gk, hk, ext = corollary_pair(g, t, args.u, _graph(args.k), args.v)
    except GraphError as exc:
        return {"passed": False, "reason": str(exc)}, EXIT_FALSE
    return {
        "GK": to_graph6(gk),
        "HK": to_graph6(hk),
        "tuple": ext.to_dict(),
        "cospectral": True,
        "passed": True,
    }, EXIT_OK


def cmd_mine(args) -> tuple[dict, int]:
    report = mine(args.n, allow_large_n=args.allow_large_n, workers=args.threads)
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n")
    if args.g6_dump:
        from .enumerate import connected_graphs

        graphs = connected_graphs(args.n, allow_large_n=args.allow_large_n, workers=args.threads)
        Path(args.g6_dump).write_text("".join(to_graph6(g) + "\n" for g in graphs))
    return report.to_dict(), EXIT_OK


def _threads_default() -> int:
    raw = os.environ.get("DISTSPEC_THREADS")
    try:
        return int(raw) if raw else 1
    except ValueError:
        return 1


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--json", action="store_true", default=default(False), help="emit one JSON document")
    p.add_argument("--tol", type=float, default=default(None), help="residual tolerance (default 1e-8*n*max(D))")
    p.add_argument("--threads", type=int, default=default(_threads_default()), help="worker processes")
    p.add_argument("--seed", type=int, default=default(0), help="seed for randomized sweeps")
    p.add_argument("--allow-large-n", action="store_true", default=default(False), help="lift the n<=9 enumeration cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distspec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("spectrum", cmd_spectrum, "exact characteristic polynomial and eigenvalues")
    p.add_argument("graph")
    p = add("cospectral", cmd_cospectral, "decide distance cospectrality of two graphs")
    p.add_argument("first")
    p.add_argument("second")
    p = add("identify", cmd_identify, "glue K's vertex v onto G's vertex u")
    p.add_argument("g")
    p.add_argument("u", type=int)
    p.add_argument("k")
    p.add_argument("v", type=int)
    p = add("pair", cmd_pair, "build the gadget pair GK(u,v), HK(u,v)")
    p.add_argument("k")
    p.add_argument("v", type=int, nargs="?", default=0)
    p.add_argument("u", type=int, nargs="?", default=0, choices=(0, 1))
    p = add("family", cmd_family, "k+1 mutually cospectral graphs with edge counts 16k..17k")
    p.add_argument("k", type=int)
    p = add("verify-t21", cmd_verify_t21, "check the gadget eigenvector correction map")
    p.add_argument("k", nargs="?")
    p.add_argument("v", type=int, nargs="?", default=0)
    p.add_argument("u", type=int, nargs="?", default=0, choices=(0, 1))
    p.add_argument("--sweep", action="store_true", help="run the seeded batch of attachment graphs")
    p = add("switch-scan", cmd_switch_scan, "list distance-switching candidates")
    p.add_argument("graph")
    p = add("switch-apply", cmd_switch_apply, "apply a switch 's,g1,g2,h1,h2'")
    p.add_argument("graph")
    p.add_argument("tuple")
    p = add("verify-t32", cmd_verify_t32, "check the switching eigenvector correction map")
    p.add_argument("graph")
    p.add_argument("tuple")
    p = add("corollary", cmd_corollary, "glue K onto a switching pair at a non-switched vertex")
    p.add_argument("graph")
    p.add_argument("tuple")
    p.add_argument("u", type=int)
    p.add_argument("k")
    p.add_argument("v", type=int, nargs="?", default=0)
    p = add("mine", cmd_mine, "enumerate connected n-vertex graphs and report cospectral classes")
    p.add_argument("n", type=int)
    p.add_argument("--out", help="also write the JSON report to this file")
    p.add_argument("--g6-dump", help="write every connected graph as graph6, one per line")
    return parser


def _render_text(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.tol is not None and args.tol <= 0:
        print("distspec: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.threads < 1:
        print("distspec: --threads must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        payload, code = args.func(args)
    except (UsageError, GraphError, ValueError) as exc:
        print(f"distspec {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(payload))
    else:
        print(_render_text(payload))
    return code


def main() -> None:
    sys.exit(run())
