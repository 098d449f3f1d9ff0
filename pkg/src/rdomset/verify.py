"""Invariant battery: every structural obligation checked on one instance.

Each check returns a small dict (name, passed, detail) so the CLI can print a
machine-readable report and the test suite can assert on the same code path.
Oracle-backed checks only run within the exhaustive size limits; the others
always run.
"""

from __future__ import annotations

from . import oracle
from .connect import (
    check_connected_result,
    check_d_partition,
    connect_via_minor,
    connect_via_wreach,
    d_partition,
)
from .covers import build_cover, build_rsets, verify_cover
from .domset import check_domination, domset, domset_by_definition
from .graph import Graph
from .ordering import (
    LinearOrder,
    heuristic_wcol_order,
    verify_path_certificate,
    wreach,
)
from .protocols import (
    run_cds_congest_protocol,
    run_cds_local_protocol,
    run_domset_protocol,
    run_wreach_protocol,
)
from .sim import DEFAULT_CONFIG, SimConfig


def _check(name: str, passed: bool, detail: str = "", **extra) -> dict:
    out = {"name": name, "passed": bool(passed), "detail": detail}
    out.update(extra)
    return out


def run_battery(
    graph: Graph,
    r: int,
    order: LinearOrder | None = None,
    config: SimConfig = DEFAULT_CONFIG,
) -> dict:
    """Run every applicable check for one (graph, r); returns a report dict."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    checks: list[dict] = []
    if order is None:
        order = heuristic_wcol_order(graph, 2 * r + 1)

    table_r = wreach(graph, order, r)
    table_2r = wreach(graph, order, 2 * r)
    table_conn = wreach(graph, order, 2 * r + 1)

    # definition-level reachability (oracle limit permitting)
    if graph.n <= oracle.WREACH_LIMIT:
        ok = True
        detail = ""
        for k, table in ((r, table_r), (2 * r, table_2r)):
            brute = oracle.wreach_bruteforce(graph, order, k)
            if tuple(table.entries) != tuple(brute.entries):
                ok = False
                detail = f"mismatch against path enumeration at k={k}"
                break
        checks.append(_check("wreach_bruteforce", ok, detail))

    # stored paths replay
    bad = None
    for table in (table_r, table_2r, table_conn):
        for v in range(graph.n):
            for u, path in table.entries[v].items():
                complaint = verify_path_certificate(graph, order, v, u, path, table.radius)
                if complaint:
                    bad = complaint
                    break
    checks.append(_check("path_certificates", bad is None, bad or ""))

    # cover obligations (containment, radius, R_v ball containment)
    cover = build_cover(graph, order, r, table=table_2r)
    report = verify_cover(graph, r, cover)
    checks.append(
        _check(
            "cover",
            report.passed,
            "; ".join(report.failures[:3]),
            degree=cover.degree,
            max_radius=cover.max_measured_radius,
        )
    )

    rsets = build_rsets(graph, order, r, cover)
    union = set()
    disjoint = True
    for members in rsets.sets.values():
        if union & members:
            disjoint = False
        union |= members
    checks.append(
        _check(
            "rsets_partition",
            disjoint and union == set(range(graph.n)),
            "" if disjoint else "overlapping R_v sets",
        )
    )

    # greedy dominating set against its defining characterization
    result = domset(graph, order, r, table=table_2r)
    defined = domset_by_definition(graph, order, r)
    checks.append(
        _check(
            "domset_matches_definition",
            result.members == defined,
            "",
            size=len(result.members),
            certificate_c=result.certificate_c,
        )
    )
    undominated = check_domination(graph, result.members, r)
    witness_ok = all(
        graph.distance(w, d) <= r for w, d in result.witness.items()
    )
    checks.append(
        _check(
            "domination_witness",
            undominated is None and witness_ok and len(result.witness) == graph.n,
            "" if undominated is None else f"undominated vertex {graph.external_id(undominated)}",
        )
    )
    checks.append(
        _check(
            "work_accounting",
            result.stats.visited
            <= (result.certificate_c + 1) * result.cluster_size_sum,
            "",
            visited=result.stats.visited,
            budget=(result.certificate_c + 1) * result.cluster_size_sum,
        )
    )

    if graph.n <= oracle.DOMSET_LIMIT:
        _, opt = oracle.min_domset(graph, r)
        ok = len(result.members) <= result.certificate_c * opt
        checks.append(
            _check(
                "ratio_certificate",
                ok,
                "",
                size=len(result.members),
                opt=opt,
                certificate_c=result.certificate_c,
                ratio=len(result.members) / opt if opt else 0.0,
            )
        )

    # block partition and both connectors
    partition = d_partition(graph, result.members, r)
    failures = check_d_partition(graph, partition)
    checks.append(_check("d_partition", not failures, "; ".join(failures[:3])))

    via_wreach = connect_via_wreach(graph, order, result.members, r, table_conn)
    failures = check_connected_result(graph, via_wreach)
    checks.append(
        _check(
            "connect_wreach",
            not failures,
            "; ".join(failures[:3]),
            size=len(via_wreach.members),
            bound=via_wreach.bounds["size_bound"],
        )
    )

    via_minor = connect_via_minor(graph, result.members, r)
    failures = check_connected_result(graph, via_minor)
    minor_ok = via_minor.minor is not None and (
        not graph.is_connected() or via_minor.minor.is_connected()
    )
    checks.append(
        _check(
            "connect_minor",
            not failures and minor_ok,
            "; ".join(failures[:3]) if failures else ("" if minor_ok else "minor disconnected"),
            size=len(via_minor.members),
            bound=via_minor.bounds["size_bound"],
        )
    )

    if graph.n <= oracle.CONNECTED_DOMSET_LIMIT and graph.is_connected():
        _, opt_conn = oracle.min_connected_domset(graph, r)
        c_prime = via_wreach.bounds["max_wreach"]
        k_wreach = c_prime * (1 + (2 * r + 1) * c_prime)
        k_minor = result.certificate_c * (1 + 2 * r * via_minor.bounds["edge_density"])
        ok = (
            len(via_wreach.members) <= k_wreach * opt_conn
            and len(via_minor.members) <= k_minor * opt_conn
        )
        checks.append(
            _check(
                "connected_oracle_ratio",
                ok,
                "",
                opt_connected=opt_conn,
                ratio_wreach=len(via_wreach.members) / opt_conn,
                ratio_minor=len(via_minor.members) / opt_conn,
            )
        )

    # sequential / distributed equivalence
    wreach_run = run_wreach_protocol(graph, r, config=config, order=order)
    seq_entries = {
        v: dict(table_2r.entries[v]) for v in range(graph.n)
    }
    checks.append(
        _check(
            "protocol_wreach",
            wreach_run.outputs_by_vertex == seq_entries
            and wreach_run.protocol_rounds == 2 * r,
            "",
            rounds=wreach_run.protocol_rounds,
        )
    )

    ds_run = run_domset_protocol(graph, r, config=config, order=order)
    checks.append(
        _check(
            "protocol_domset",
            ds_run.extra["members"] == result.members
            and all(
                ds_run.outputs_by_vertex[w]["dominator"] == result.witness[w]
                for w in range(graph.n)
            ),
            "",
        )
    )

    cds_run = run_cds_congest_protocol(graph, r, config=config, order=order)
    checks.append(
        _check(
            "protocol_cds_congest",
            cds_run.extra["members_prime"] == via_wreach.members
            and cds_run.extra["members"] == result.members,
            "",
        )
    )

    local_run = run_cds_local_protocol(graph, r, result.members, config=config)
    checks.append(
        _check(
            "protocol_cds_local",
            local_run.extra["members_prime"] == via_minor.members
            and not local_run.extra["aborted"]
            and local_run.protocol_rounds == 3 * r + 1,
            "",
            rounds=local_run.protocol_rounds,
        )
    )

    return {
        "n": graph.n,
        "edges": graph.edge_count(),
        "r": r,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }
