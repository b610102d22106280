"""Command-line front end.

Exit codes: 0 decided or constructed, 2 a NONE / NOT-FOUND verdict (for
``ramsey``: the host is not Ramsey and a good colouring is written), 3 a
search cap or budget was hit, 64 usage or input error, 1 an internal
consistency check failed.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classify import classify
from .density import (
    family_two_density,
    is_strictly_two_balanced,
    max_density,
    max_two_density,
    mixed_two_density,
    strictly_balanced_reduction,
)
from .errors import DomainError, FalsificationError, ResourceError
from .fileio import (
    colouring_to_json,
    digest,
    hypergraph_dump,
    lists_from_json,
    lists_to_json,
    read_family,
    read_graph,
    write_witness,
)

EXIT_OK, EXIT_NONE, EXIT_UNDECIDED, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3, 64, 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Report:
    """Output with a provenance header; the timestamp is the only line that
    varies between identical runs, and it is marked as such."""

    def __init__(self, args, argv):
        self.lines: list[str] = []
        self.args = args
        self.header = [
            f"# listramsey {__version__}",
            f"# command: {' '.join(argv)}",
            f"# seed: {getattr(args, 'seed', 0)}",
            f"# caps: max_edges={getattr(args, 'max_edges', None)} budget={getattr(args, 'budget', None)}",
        ]
        for name in ("graph", "family", "lists"):
            val = getattr(args, name, None)
            if val and Path(val).exists():
                self.header.append(f"# input {name}: {val} sha256:{digest(Path(val).read_bytes())}")
        self.header.append(f"# timestamp (varies): {_dt.datetime.now(_dt.timezone.utc).isoformat(timespec='seconds')}")

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def text(self) -> str:
        return "\n".join(self.header + self.lines) + "\n"

    def emit(self) -> None:
        out = getattr(self.args, "out", None)
        if out:
            Path(out).write_text(self.text())
        else:
            sys.stdout.write(self.text())


def _frac(x) -> str:
    return str(Fraction(x))


# -- subcommands -------------------------------------------------------------------


def cmd_density(args, rep: Report) -> int:
    if args.graph:
        G = read_graph(args.graph)
        rep.add(f"n = {G.n}")
        rep.add(f"e = {G.e}")
        rep.add(f"m = {_frac(max_density(G))}")
        rep.add(f"m2 = {_frac(max_two_density(G))}")
        if G.n >= 3:
            ok, bad = is_strictly_two_balanced(G)
            rep.add(f"strictly_2_balanced = {'yes' if ok else 'no'}")
            if bad is not None:
                rep.add(f"violating_subgraph = {list(bad.edges)}")
    if args.family:
        fam = read_family(args.family)
        rep.add(f"family_m2 = {_frac(family_two_density(fam))}")
        if all(max_two_density(F) > 1 for F in fam):
            red = strictly_balanced_reduction(fam)
            for name, F in zip(red.names, red.members):
                rep.add(f"reduction {name} = n {F.n} edges {list(F.edges)}")
    if args.mixed:
        H, L = read_graph(args.mixed[0]), read_graph(args.mixed[1])
        rep.add(f"mixed_m2 = {_frac(mixed_two_density(H, L))}")
    if not (args.graph or args.family or args.mixed):
        raise UsageError("density needs --graph, --family or --mixed")
    return EXIT_OK


def cmd_classify(args, rep: Report) -> int:
    G = read_graph(args.graph)
    c = classify(G)
    for flag in ("is_forest", "is_star_forest", "is_broom", "is_b_graph", "is_cstar_graph",
                 "is_unicyclic_per_component"):
        rep.add(f"{flag} = {getattr(c, flag)}")
    for s in c.component_summaries:
        rep.add(f"component v={s.vertices} e={s.edges} cycles={s.cycles} kind={s.kind}")
    return EXIT_OK


def _write_colouring(args, G, col, rep) -> None:
    if args.colouring_out:
        Path(args.colouring_out).write_text(colouring_to_json(G, col))
        rep.add(f"colouring written to {args.colouring_out}")
    rep.add("colouring = " + json.dumps(col.as_list(G)))


def cmd_ramsey(args, rep: Report) -> int:
    from .oracle import good_colouring, is_asymmetric_ramsey, is_minimally_ramsey

    G = read_graph(args.graph)
    kw = {"cap": args.max_edges, "budget": args.budget}
    if args.asymmetric:
        seq = list(read_family(args.asymmetric))
        v = is_asymmetric_ramsey(G, seq, **kw)
        rep.add(f"asymmetric_ramsey = {v.is_ramsey}")
        if v.witness is not None:
            _write_colouring(args, G, v.witness, rep)
        return EXIT_OK if v.is_ramsey else EXIT_NONE
    fam = read_family(args.family)
    if args.minimal:
        m = is_minimally_ramsey(G, fam, args.r, **kw)
        rep.add(f"ramsey = {m.is_ramsey}")
        rep.add(f"minimally_ramsey = {m.is_minimal}")
        if m.failed_edge is not None:
            rep.add(f"edge_not_needed = {list(m.failed_edge)}")
        return EXIT_OK if m.is_minimal else EXIT_NONE
    col = good_colouring(G, fam, args.r, **kw)
    rep.add(f"ramsey = {col is None}")
    if col is None:
        return EXIT_OK
    _write_colouring(args, G, col, rep)
    return EXIT_NONE


def cmd_lists(args, rep: Report) -> int:
    from .oracle import colouring_from_lists, find_bad_list_assignment

    G = read_graph(args.graph)
    fam = read_family(args.family)
    if args.search:
        res = find_bad_list_assignment(G, fam, args.r, args.palette_cap, budget=args.budget, cap=args.max_edges)
        rep.add(f"search = {res.reason}")
        rep.add(f"assignments_tried = {res.tried}")
        rep.add(f"complete = {res.complete}")
        if res.assignment is not None:
            if args.lists_out:
                Path(args.lists_out).write_text(lists_to_json(G, res.assignment))
            rep.add("lists = " + json.dumps([list(res.assignment[e]) for e in G.edges]))
            return EXIT_OK
        if res.reason == "BUDGET":
            rep.add("verdict = BOUNDED")
            return EXIT_UNDECIDED
        if not res.complete:
            rep.add("verdict = BOUNDED (palette cap below r * e)")
        return EXIT_NONE
    if not args.lists:
        raise UsageError("lists needs --lists FILE or --search")
    L = lists_from_json(G, Path(args.lists).read_text())
    col = colouring_from_lists(G, fam, L, cap=args.max_edges, budget=args.budget)
    if col is None:
        rep.add("colouring = NONE")
        return EXIT_NONE
    _write_colouring(args, G, col, rep)
    return EXIT_OK


COLOURINGS = ("nonrepetitive", "cstar", "broom", "forest", "k5k3", "k6k4", "triangle-free", "aux-guided")


def _parse_phi(text: str) -> dict[str, int]:
    phi = {}
    for tok in filter(None, text.split(",")):
        k, v = tok.split("=")
        phi[k.strip()] = int(v)
    return phi


def cmd_colour(args, rep: Report) -> int:
    from . import colourings as C
    from .oracle import ListAssignment, is_good_colouring
    from .witnesses import aux_guided_colouring

    G = read_graph(args.graph)
    L = lists_from_json(G, Path(args.lists).read_text()) if args.lists else ListAssignment.identical(G, (0, 1))
    name = args.name
    if name == "nonrepetitive":
        col = C.nonrepetitive_colouring(G, L)
        if col is None:
            rep.add("colouring = NONTRIVIAL")
            return EXIT_NONE
    elif name == "cstar":
        col = C.cstar_colouring(G, L)
    elif name == "broom":
        col = C.broom_colouring(G, L)
    elif name == "forest":
        col = C.forest_list_colouring(G, L)
    elif name == "k5k3":
        col, case = C.colour_k5_for_k3(L, return_case=True)
        rep.add(f"case = {case}")
    elif name == "k6k4":
        col = C.colour_k6_for_k4(L, seed=args.seed)
    elif name == "triangle-free":
        trace: list = []
        col = C.sparse_triangle_free_colouring(G, L, trace=trace)
        rep.add(f"branches = {json.dumps(sorted(set(str(t[0]) for t in trace)))}")
    else:
        if not args.family or not args.phi:
            raise UsageError("aux-guided needs --family and --phi")
        col = aux_guided_colouring(G, read_family(args.family), _parse_phi(args.phi))
    if args.family:
        rep.add(f"good_for_family = {is_good_colouring(G, read_family(args.family), col, L)}")
    for c in col.colours():
        cls = classify(col.class_graph(G, c))
        rep.add(f"class {c}: star_forest={cls.is_star_forest} b_graph={cls.is_b_graph} "
                f"cstar_graph={cls.is_cstar_graph} forest={cls.is_forest}")
    _write_colouring(args, G, col, rep)
    return EXIT_OK


def cmd_witness(args, rep: Report) -> int:
    from .witnesses import build_list_ramsey_witness, build_plain_ramsey_witness

    fam = read_family(args.family)
    if args.kind == "list":
        pkg = build_list_ramsey_witness(fam)
    else:
        pkg = build_plain_ramsey_witness(fam, args.cap)
        if pkg is None:
            rep.add(f"witness = NONE (no star forest, truncated auxiliary hypergraph up to C{args.cap} is 2-colourable)")
            return EXIT_NONE
    rep.add(f"host = n {pkg.host.n} e {pkg.host.e}")
    rep.add(f"m(host) = {_frac(max_density(pkg.host))}")
    for k in sorted(pkg.construction_log):
        rep.add(f"log {k} = {json.dumps(pkg.construction_log[k])}")
    if args.outdir:
        for p in write_witness(pkg, args.outdir):
            rep.add(f"wrote {p}")
    return EXIT_OK


def cmd_explore(args, rep: Report) -> int:
    import math

    from .explorer import decode_trace, dump_trace, encode_trace, eta_constant, explore_cluster, gamma_constant, verify_balance

    G = read_graph(args.graph)
    fam = read_family(args.family)
    t = family_two_density(fam)
    eta1, eta2, eta = eta_constant(fam)
    gamma = args.gamma if args.gamma is not None else gamma_constant(fam)
    log_bound = args.log_bound if args.log_bound is not None else G.n + 1
    trace = explore_cluster(G, fam, gamma, log_bound)
    rep.add(f"t = {_frac(t)}")
    rep.add(f"eta1 = {'INF' if eta1 == math.inf else _frac(eta1)}")
    rep.add(f"eta2 = {_frac(eta2)}")
    rep.add(f"eta = {_frac(eta)}")
    rep.add(f"Gamma = {gamma}")
    rep.add(f"tau = {trace.tau}")
    rep.add(f"stop = {trace.stop_reason.value}")
    ok = verify_balance(trace, t, eta)
    rep.add(f"balance = {'holds' if ok else 'FAILS'}")
    tokens = encode_trace(trace)
    rt = decode_trace(tokens, fam, G.n) == trace.final_graph()
    rep.add(f"round_trip = {'exact' if rt else 'MISMATCH'}")
    for ln in tokens:
        rep.add(ln)
    if args.trace_out:
        Path(args.trace_out).write_text(dump_trace(trace))
    if not (ok and rt):
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_aux(args, rep: Report) -> int:
    from .hypergraph import aux_hypergraph, proper_two_colouring

    fam = read_family(args.family)
    H = aux_hypergraph(fam, args.cap)
    rep.add(hypergraph_dump(H).rstrip("\n"))
    rep.add("edges = " + json.dumps(H.labelled_edges()))
    col = proper_two_colouring(H, budget=args.budget)
    if col is None:
        rep.add("two_colouring = NONE")
        return EXIT_NONE
    rep.add("two_colouring = " + ",".join(f"{H.vertices[v]}={c}" for v, c in sorted(col.items())))
    return EXIT_OK


def _parse_p(tok: str, n: int):
    """Decimal, or ``c/n``, or ``c*n^e`` with a rational exponent e."""
    import re

    tok = tok.strip()
    m = re.fullmatch(r"([0-9.]+)\s*/\s*n", tok)
    if m:
        return Fraction(m[1]) / n
    m = re.fullmatch(r"([0-9.]+)\s*\*\s*n\^\(?(-?[0-9./]+)\)?", tok)
    if m:
        return float(m[1]) * n ** float(Fraction(m[2]))
    return tok


def cmd_sweep(args, rep: Report) -> int:
    from .lab import Mode, SweepConfig, rows_to_csv, run_sweep

    fam = read_family(args.family)
    toks = [t for t in args.p.split(",") if t.strip()]
    grid = [_parse_p(t, args.n) for t in toks]
    labels = [t.strip() for t in toks]
    cfg = SweepConfig(args.n, grid, args.trials, fam, args.seed, Mode(args.mode.upper()), args.r,
                      p_labels=labels, component_cap=args.max_edges, budget=args.budget, jobs=args.jobs)
    rows = run_sweep(cfg)
    if any(r.undecided for r in rows):
        rep.add("# BOUNDED: some samples hit the search caps and are excluded from phat")
    rep.add(rows_to_csv(rows).rstrip("\n"))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="listramsey", description="Ramsey and list-Ramsey tools for sparse graphs and G(n,p).")
    ap.add_argument("--version", action="version", version=f"listramsey {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, seed=False):
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--max-edges", type=int, default=30,
                       help="largest component the exhaustive search will take on (edges)")
        p.add_argument("--budget", type=int, default=None, help="search node budget")
        p.add_argument("--seed", type=int, default=0)
        return p

    p = common(sub.add_parser("density", help="m, m2, family and mixed 2-densities"))
    p.add_argument("--graph")
    p.add_argument("--family")
    p.add_argument("--mixed", nargs=2, metavar=("H", "L"))
    p.set_defaults(func=cmd_density)

    p = common(sub.add_parser("classify", help="forest / B-graph / C*-graph flags"))
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_classify)

    p = common(sub.add_parser("ramsey", help="good colouring, asymmetric or minimality queries"))
    p.add_argument("--graph", required=True)
    p.add_argument("--family")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--asymmetric", help="comma-separated graphs, one per colour")
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--colouring-out")
    p.set_defaults(func=cmd_ramsey)

    p = common(sub.add_parser("lists", help="colour from given lists or search for bad lists"))
    p.add_argument("--graph", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--lists")
    p.add_argument("--search", action="store_true")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--palette-cap", type=int, default=4)
    p.add_argument("--colouring-out")
    p.add_argument("--lists-out")
    p.set_defaults(func=cmd_lists)

    p = common(sub.add_parser("colour", help="run one of the explicit colouring algorithms"))
    p.add_argument("--graph", required=True)
    p.add_argument("--name", required=True, choices=COLOURINGS)
    p.add_argument("--lists")
    p.add_argument("--family")
    p.add_argument("--phi", help="aux-guided only, e.g. C3=0,C5=1")
    p.add_argument("--colouring-out")
    p.set_defaults(func=cmd_colour)

    p = common(sub.add_parser("witness", help="build a sparse (list-)Ramsey host"))
    p.add_argument("--family", required=True)
    p.add_argument("--kind", choices=("list", "plain"), default="list")
    p.add_argument("--cap", type=int, default=9, help="longest odd cycle in the auxiliary hypergraph")
    p.add_argument("--outdir")
    p.set_defaults(func=cmd_witness)

    p = common(sub.add_parser("explore", help="explore a cluster and check the balance inequality"))
    p.add_argument("--graph", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--gamma", type=int)
    p.add_argument("--log-bound", type=int)
    p.add_argument("--trace-out")
    p.set_defaults(func=cmd_explore)

    p = common(sub.add_parser("aux", help="odd-cycle hypergraph of a family and its 2-colourability"))
    p.add_argument("--family", required=True)
    p.add_argument("--cap", type=int, default=9)
    p.set_defaults(func=cmd_aux)

    p = common(sub.add_parser("sweep", help="Monte Carlo experiments on G(n,p)"))
    p.add_argument("--mode", choices=("ramsey", "cluster_scan", "unicyclic", "RAMSEY", "CLUSTER_SCAN", "UNICYCLIC"),
                   default="ramsey")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--p", required=True, help="comma-separated grid: decimals, c/n or c*n^e")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep, max_edges=None, budget=2_000_000)
    return ap


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    rep = Report(args, argv)
    try:
        code = args.func(args, rep)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except ResourceError as exc:
        rep.add(f"verdict = UNDECIDED ({exc})")
        rep.emit()
        return EXIT_UNDECIDED
    except FalsificationError as exc:
        sys.stderr.write(f"internal check failed: {exc}\n")
        return EXIT_INTERNAL
    except (DomainError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    rep.emit()
    return code


def main() -> None:
    sys.exit(run())
