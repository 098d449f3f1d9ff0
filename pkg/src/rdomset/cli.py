"""Command-line front door: generate graphs, run pipelines, simulate, verify.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 communication
model violation.  All reports are JSON on stdout and deterministic for fixed
inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import oracle
from .connect import (
    connect_via_minor,
    connect_via_wreach,
    connected_result_to_json_dict,
)
from .covers import build_cover
from .domset import domset
from .graph import GraphFormatError, generate, load_graph
from .ordering import LinearOrder, degeneracy_order, natural_order, wreach
from .protocols import (
    run_cds_congest_protocol,
    run_cds_local_protocol,
    run_domset_protocol,
    run_wreach_protocol,
)
from .sim import BandwidthViolation, SimConfig
from .verify import run_battery

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_MODEL = 3

PROTOCOLS = ("wreach", "domset", "cds-congest", "cds-local")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rdomset", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a graph family instance")
    gen.add_argument("family")
    gen.add_argument("params", nargs="*", type=float)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", required=True)

    dom = sub.add_parser("domset", help="sequential dominating-set pipeline")
    dom.add_argument("graph")
    dom.add_argument("r", type=int)
    dom.add_argument("--connected", choices=("wreach", "minor"), default=None)
    dom.add_argument("--order", choices=("degeneracy", "natural"), default="degeneracy")
    dom.add_argument("--order-file", default=None,
                     help="file with external ids, one per line, overriding --order")
    dom.add_argument("--verify", action="store_true",
                     help="also run the exhaustive optimum (small graphs only)")

    sim = sub.add_parser("simulate", help="run a protocol in the round simulator")
    sim.add_argument("graph")
    sim.add_argument("r", type=int)
    sim.add_argument("protocol", choices=PROTOCOLS)
    sim.add_argument("model", choices=("local", "congest", "congest_bc"))
    sim.add_argument("--kappa", type=int,
                     default=int(os.environ.get("RDOMSET_KAPPA", "64")))
    sim.add_argument("--order-source", choices=("injected", "simulated"),
                     default="injected")
    sim.add_argument("--trace", default=None, help="write per-round JSONL here")

    ver = sub.add_parser("verify", help="run the invariant battery")
    ver.add_argument("graph")
    ver.add_argument("r", type=int)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "domset":
            return _cmd_domset(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return EXIT_USAGE
    except BandwidthViolation as exc:
        _emit({"error": "bandwidth_violation", "detail": str(exc),
               "vertex": exc.vertex, "round": exc.round_no, "bits": exc.bits,
               "cap": exc.cap})
        return EXIT_MODEL
    except (GraphFormatError, FileNotFoundError, ValueError) as exc:
        sys.stderr.write(f"rdomset: error: {exc}\n")
        return EXIT_USAGE


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2, default=_jsonable) + "\n")


def _jsonable(value):
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, float) and value == float("inf"):
        return None
    raise TypeError(f"not JSON serializable: {type(value)}")


def _cmd_gen(args) -> int:
    params = [int(p) if float(p).is_integer() else p for p in args.params]
    graph = generate(args.family, *params, seed=args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(f"# rdomset gen {args.family} "
                 + " ".join(str(p) for p in params)
                 + (f" --seed {args.seed}" if args.seed is not None else "")
                 + "\n")
        fh.write(graph.to_edge_list_text())
    _emit({"family": args.family, "n": graph.n, "edges": graph.edge_count(),
           "out": args.out})
    return EXIT_OK


def _load_order(graph, args) -> LinearOrder:
    if getattr(args, "order_file", None):
        with open(args.order_file, "r", encoding="utf-8") as fh:
            ids = [int(tok) for tok in fh.read().split()]
        return LinearOrder.from_external_ids(graph, ids)
    if args.order == "natural":
        return natural_order(graph)
    return degeneracy_order(graph)


def _cmd_domset(args) -> int:
    graph = load_graph(args.graph)
    r = args.r
    if r < 1:
        raise ValueError("r must be >= 1")
    order = _load_order(graph, args)
    result = domset(graph, order, r)
    cover = build_cover(graph, order, r)
    ext = graph.external_id
    report = {
        "r": r,
        "D": sorted(ext(v) for v in result.members),
        "size": len(result.members),
        "certificate_c": result.certificate_c,
        "cover_degree": cover.degree,
        "cover_max_radius": cover.max_measured_radius,
        "order": order.to_external_ids(graph),
    }
    if args.verify and graph.n <= oracle.DOMSET_LIMIT:
        _, opt = oracle.min_domset(graph, r)
        report["opt_size"] = opt
        report["ratio"] = len(result.members) / opt if opt else 0.0
    if args.connected == "wreach":
        table = wreach(graph, order, 2 * r + 1)
        conn = connect_via_wreach(graph, order, result.members, r, table)
    elif args.connected == "minor":
        conn = connect_via_minor(graph, result.members, r)
    else:
        conn = None
    if conn is not None:
        conn_doc = connected_result_to_json_dict(graph, conn)
        conn_doc.pop("r")
        conn_doc.pop("D")
        report["D_prime_size"] = len(conn.members)
        report.update(conn_doc)
    _emit(report)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    graph = load_graph(args.graph)
    r = args.r
    if r < 1:
        raise ValueError("r must be >= 1")
    config = SimConfig(kappa=args.kappa)
    ext = graph.external_id
    if args.protocol == "cds-local":
        if args.model != "local":
            raise ValueError("cds-local runs in the local model")
        seed_order = degeneracy_order(graph)
        members = domset(graph, seed_order, r).members
        outcome = run_cds_local_protocol(graph, r, members, config=config)
        summary = {
            "D": sorted(ext(v) for v in members),
            "D_prime": sorted(ext(v) for v in outcome.extra["members_prime"]),
            "aborted": [ext(v) for v in outcome.extra["aborted"]],
        }
    else:
        runner = {
            "wreach": run_wreach_protocol,
            "domset": run_domset_protocol,
            "cds-congest": run_cds_congest_protocol,
        }[args.protocol]
        outcome = runner(
            graph, r, model_kind=args.model, config=config,
            order_source=args.order_source,
        )
        if args.protocol == "wreach":
            summary = {
                "sets": {
                    str(ext(v)): sorted(ext(u) for u in outcome.outputs_by_vertex[v])
                    for v in range(graph.n)
                }
            }
        elif args.protocol == "domset":
            summary = {"D": sorted(ext(v) for v in outcome.extra["members"])}
        else:
            summary = {
                "D": sorted(ext(v) for v in outcome.extra["members"]),
                "D_prime": sorted(ext(v) for v in outcome.extra["members_prime"]),
            }
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            if outcome.order_trace is not None:
                fh.write(outcome.order_trace.to_jsonl())
            fh.write(outcome.sim.trace.to_jsonl())
    report = {
        "protocol": args.protocol,
        "model": args.model,
        "r": r,
        "rounds": outcome.protocol_rounds,
        "order_rounds": outcome.order_rounds,
        "total_rounds": outcome.total_rounds,
        "max_message_bits": outcome.sim.trace.max_bits,
        "messages": outcome.sim.trace.total_messages,
    }
    report.update(summary)
    _emit(report)
    return EXIT_OK


def _cmd_verify(args) -> int:
    graph = load_graph(args.graph)
    report = run_battery(graph, args.r)
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_VERIFY


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
