"""Command line entry point: ``ramseypack <subcommand> ...``.

Exit codes: 0 success, 1 usage or IO error, 2 verified-negative result,
3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import bounds as bnd
from .cliques import BudgetExhausted, has_clique, k_independence_number
from .exact import CANON_LEVELS, SearchSpec, compute_P_exact
from .forcing import Escaped, pattern_forces, peel
from .formats import FormatError, format_edgelist, format_pattern, from_graph6, parse_edgelist, read_pattern, to_graph6
from .graph import GraphError, PatternError
from .lll import Exhausted, lll_feasibility, pack_triangle_free
from .moment import build_moment_pattern, certify_moment, moment_report
from .senders import DistanceTooSmall, Outcome, UnverifiedSender, apex_extension, assemble_bel_graph, read_sender, verify_sender

log = logging.getLogger("ramseypack")

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--budget-nodes", type=_positive, default=None)
    p.add_argument("--budget-resamples", type=_positive, default=None)
    p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv", "graph6", "edgelist"), default=None)
    p.add_argument("--deterministic", action="store_true", help="omit timing fields from reports")
    p.add_argument("--trust-senders", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="ramseypack", description="Clique packing patterns and minimum-degree Ramsey bounds.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("construct-moment", parents=[common], help="finite-field critical pattern")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-q", type=int, default=None, help="prime field order (default: least prime >= k^2 r)")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--pattern-out", type=Path, default=None)

    p = sub.add_parser("pack-lll", parents=[common], help="triangle-free packing by local resampling")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-m", type=int, default=None, help="forbidden independent-set size (default ceil(n/r))")
    p.add_argument("-p", type=float, default=None, help="edge probability (default 1/(4 sqrt n))")
    p.add_argument("--allow-inexact", action="store_true")
    p.add_argument("--feasibility", action="store_true", help="also evaluate the Local Lemma inequalities")
    p.add_argument("--pattern-out", type=Path, default=None)

    p = sub.add_parser("verify-pattern", parents=[common], help="check a pattern file")
    p.add_argument("pattern", type=Path)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--forcing-limit", type=int, default=60, help="skip the forcing check above this many vertices")

    p = sub.add_parser("exact-p", parents=[common], help="exact P_r(k) by exhaustive search")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--canon", choices=CANON_LEVELS, default="degree-order")
    p.add_argument("--time-budget", type=float, default=None, help="seconds")
    p.add_argument("--witness-out", type=Path, default=None)

    p = sub.add_parser("bounds", parents=[common], help="bound table for s_r(K_k)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--r-min", type=int, default=2)
    p.add_argument("--model", choices=("elementary", "shearer_k2", "dudek_mubayi"), default="elementary")
    p.add_argument("--c", type=float, default=1.0, help="constant of the dudek_mubayi model")

    p = sub.add_parser("verify-sender", parents=[common], help="classify a sender candidate")
    p.add_argument("sender", type=Path)

    p = sub.add_parser("assemble", parents=[common], help="glue senders onto a pattern")
    p.add_argument("pattern", type=Path)
    p.add_argument("--pos", type=Path, required=True)
    p.add_argument("--neg", type=Path, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--apex", action="store_true", help="add a vertex joined to the pattern vertices")
    p.add_argument("--graph-out", type=Path, default=None)

    p = sub.add_parser("peel", parents=[common], help="remove a maximum K_k-free set of the last layer")
    p.add_argument("pattern", type=Path)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--pattern-out", type=Path, default=None)

    p = sub.add_parser("convert", parents=[common], help="graph6 <-> edge list")
    p.add_argument("input", type=Path)
    p.add_argument("--from", dest="src_fmt", choices=("graph6", "edgelist"), default=None)
    return ap


# -- helpers -----------------------------------------------------------------

def _report(args, payload: dict, t0: float) -> dict:
    out = {"schema": 1, "command": args.cmd, "seed": args.seed}
    out.update(payload)
    if not args.deterministic:
        out["elapsed"] = round(time.perf_counter() - t0, 6)
    return out


def _emit(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)


def _emit_json(args, report: dict) -> None:
    _emit(args, json.dumps(report, indent=2, sort_keys=False) + "\n")


def _guess_format(path: Path, given: str | None) -> str:
    if given:
        return given
    return "graph6" if path.suffix in (".g6", ".graph6") else "edgelist"


# -- subcommands -------------------------------------------------------------

def cmd_construct_moment(args, t0) -> int:
    con = build_moment_pattern(args.k, args.r, args.seed, q=args.q)
    cert = certify_moment(con, args.samples, args.seed)
    report = moment_report(con, cert, args.deterministic)
    report.pop("schema")
    report.pop("seed")
    if args.pattern_out:
        args.pattern_out.write_text(format_pattern(con.pattern))
    _emit_json(args, _report(args, report, t0))
    return EXIT_OK if cert.clean else EXIT_NEGATIVE


def cmd_pack_lll(args, t0) -> int:
    extra = {}
    if args.feasibility:
        extra["feasibility"] = lll_feasibility(args.n, args.r).to_dict()
    try:
        res = pack_triangle_free(
            args.n, args.r, args.seed, m=args.m, alpha_budget=args.budget_nodes,
            max_resamples=args.budget_resamples or 200_000, p=args.p, allow_inexact=args.allow_inexact,
        )
    except Exhausted as exc:
        _emit_json(args, _report(args, {"n": args.n, "r": args.r, "success": False,
                                        "error": str(exc), "stats": exc.stats, **extra}, t0))
        return EXIT_BUDGET
    if args.pattern_out:
        args.pattern_out.write_text(format_pattern(res.pattern))
    d = res.to_dict()
    d.pop("schema")
    d.pop("seed")
    _emit_json(args, _report(args, {**d, **extra}, t0))
    return EXIT_OK if res.success else EXIT_NEGATIVE


def cmd_verify_pattern(args, t0) -> int:
    p = read_pattern(args.pattern)
    k = args.k
    layers = []
    exhausted = False
    for i, g in enumerate(p.layers, 1):
        big = has_clique(g, k + 1)
        entry = {"layer": i, "edges": g.num_edges, "clique_free": big is None}
        try:
            ind = k_independence_number(g, k, args.budget_nodes)
            entry.update(alpha_k=ind.size, alpha_exact=True, critical=big is None and ind.size * p.r < p.n)
        except BudgetExhausted as exc:
            exhausted = True
            entry.update(alpha_k_lower=exc.partial.size, alpha_exact=False, critical=None)
        layers.append(entry)
    clique_free = all(e["clique_free"] for e in layers)
    # all layers critical implies forcing: some colour class has >= n/r vertices
    critical = all(e["critical"] for e in layers)
    payload = {"n": p.n, "r": p.r, "k": k, "edge_disjoint": True, "clique_free": clique_free,
               "all_critical": critical, "layers": layers}
    forces = None
    if p.n <= args.forcing_limit:
        verdict = pattern_forces(p, k)
        forces = verdict.forces
        payload["forces"] = forces
        if isinstance(verdict, Escaped):
            payload["escape_colouring"] = list(verdict.colouring.colours)
    _emit_json(args, _report(args, payload, t0))
    if clique_free and (critical or forces):
        return EXIT_OK
    if exhausted and forces is None:
        return EXIT_BUDGET
    return EXIT_NEGATIVE


def cmd_exact_p(args, t0) -> int:
    spec = SearchSpec(args.r, args.k, n_min=args.n_min, n_max=args.n_max, canon=args.canon,
                      node_budget=args.budget_nodes, time_budget=args.time_budget, workers=args.workers)
    res = compute_P_exact(spec)
    if args.witness_out and res.witness is not None:
        args.witness_out.write_text(format_pattern(res.witness))
    _emit_json(args, _report(args, res.to_dict(), t0))
    if res.exact:
        return EXIT_OK
    return EXIT_BUDGET if res.levels and not res.levels[-1].exhausted else EXIT_NEGATIVE


def cmd_bounds(args, t0) -> int:
    model = bnd.ErdosRogersModel(args.model, args.c)
    rows = bnd.bounds_table(args.k, args.r_max, model, r_min=args.r_min)
    fmt = args.format or "csv"
    if fmt == "csv":
        _emit(args, bnd.rows_to_csv(rows))
    elif fmt == "json":
        from dataclasses import asdict

        holds, first_bad = bnd.g_condition(model, bnd.LOG_DOMAIN_MIN + 1, 10_000) if args.model != "elementary" else (None, None)
        payload = {"k": args.k, "model": model.label, "constants": {"c_lower": 1.0, "c_upper": 1.0, "c_model": model.c},
                   "g_condition": {"holds": holds, "first_failure": first_bad}, "columns": bnd.CSV_COLUMNS,
                   "rows": [asdict(r) for r in rows]}
        _emit_json(args, _report(args, payload, t0))
    else:
        raise UsageError("bounds supports --format csv or json")
    return EXIT_OK if all(r.consistent for r in rows) else EXIT_NEGATIVE


def cmd_verify_sender(args, t0) -> int:
    c = read_sender(args.sender)
    v = verify_sender(c, args.budget_nodes, args.workers)
    payload = {"n": c.graph.n, "edges": c.graph.num_edges, "r": c.r, "h": c.h,
               "polarity": c.polarity.value, **v.to_dict()}
    _emit_json(args, _report(args, payload, t0))
    if v.outcome is Outcome.VERIFIED:
        return EXIT_OK
    return EXIT_BUDGET if v.outcome is Outcome.INCONCLUSIVE else EXIT_NEGATIVE


def cmd_assemble(args, t0) -> int:
    p = read_pattern(args.pattern)
    pos, neg = read_sender(args.pos), read_sender(args.neg)
    try:
        asm = assemble_bel_graph(p, pos, neg, args.h, trusted=args.trust_senders, budget=args.budget_nodes)
    except (DistanceTooSmall, UnverifiedSender) as exc:
        _emit_json(args, _report(args, {"error": type(exc).__name__, "message": str(exc)}, t0))
        return EXIT_NEGATIVE
    g = asm.graph
    layout = asm.layout()
    if args.apex:
        g = apex_extension(g, asm.pattern_vertices)
        layout["apex"] = g.n - 1
        layout["n"] = g.n
    if args.graph_out:
        args.graph_out.write_bytes(to_graph6(g) + b"\n")
    payload = {"graph6": to_graph6(g).decode("ascii"), "edges": g.num_edges, "layout": layout}
    _emit_json(args, _report(args, payload, t0))
    return EXIT_OK


def cmd_peel(args, t0) -> int:
    p = read_pattern(args.pattern)
    try:
        res = peel(p, args.k, args.budget_nodes)
    except BudgetExhausted as exc:
        _emit_json(args, _report(args, {"error": str(exc)}, t0))
        return EXIT_BUDGET
    if args.pattern_out:
        args.pattern_out.write_text(format_pattern(res.pattern))
    payload = {"n_in": p.n, "r_in": p.r, "n_out": res.pattern.n, "r_out": res.pattern.r,
               "removed": list(res.removed), "kept": list(res.kept), "alpha_k": res.independence.size,
               "exact": res.exact, "forces": pattern_forces(res.pattern, args.k).forces,
               "pattern": format_pattern(res.pattern)}
    _emit_json(args, _report(args, payload, t0))
    return EXIT_OK if payload["forces"] else EXIT_NEGATIVE


def cmd_convert(args, t0) -> int:
    src = _guess_format(args.input, args.src_fmt)
    if src == "graph6":
        raw = args.input.read_bytes().strip()
        try:
            g = from_graph6(raw.splitlines()[0] if raw else b"")
        except FormatError as exc:
            raise FormatError(str(exc).split(": ", 1)[-1], exc.line, exc.col, str(args.input)) from None
    else:
        g = parse_edgelist(args.input.read_text(), str(args.input))
    dst = args.format or ("edgelist" if src == "graph6" else "graph6")
    if dst == "graph6":
        _emit(args, to_graph6(g).decode("ascii") + "\n")
    elif dst == "edgelist":
        _emit(args, format_edgelist(g))
    else:
        raise UsageError("convert writes graph6 or edgelist")
    return EXIT_OK


COMMANDS = {
    "construct-moment": cmd_construct_moment,
    "pack-lll": cmd_pack_lll,
    "verify-pattern": cmd_verify_pattern,
    "exact-p": cmd_exact_p,
    "bounds": cmd_bounds,
    "verify-sender": cmd_verify_sender,
    "assemble": cmd_assemble,
    "peel": cmd_peel,
    "convert": cmd_convert,
}


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("RAMSEYPACK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    t0 = time.perf_counter()
    try:
        return COMMANDS[args.cmd](args, t0)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, GraphError, PatternError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
