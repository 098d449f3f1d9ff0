"""Sparse r-neighborhood covers built by inverting weak 2r-reachability.

The cluster of a vertex v collects every vertex from which v is weakly
2r-reachable.  For an order with small weak 2r-reachability sets this family
covers every closed r-ball, has radius at most 2r, and its degree equals the
measured maximum set size, which is the approximation certificate used
downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph import Graph, INFINITY
from .ordering import LinearOrder, WReachTable, wcol_value, wreach


@dataclass(frozen=True)
class Cover:
    r: int
    clusters: dict[int, frozenset[int]]
    degree: int
    radius_bound: int
    measured_radii: dict[int, int]
    table: WReachTable = field(repr=False)

    @property
    def max_measured_radius(self) -> int:
        return max(self.measured_radii.values(), default=0)


@dataclass(frozen=True)
class RSets:
    r: int
    sets: dict[int, frozenset[int]]


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    failures: list[str]

    def __bool__(self) -> bool:
        return self.passed


def build_cover(
    graph: Graph, order: LinearOrder, r: int, table: WReachTable | None = None
) -> Cover:
    """Clusters X_v = { w : v weakly 2r-reachable from w }, plus measured
    degree and per-cluster radius.

    ``table`` may supply a precomputed weak 2r-reachability table for the same
    (graph, order); otherwise it is computed here.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if table is None:
        table = wreach(graph, order, 2 * r)
    elif table.radius != 2 * r or table.order != order or table.graph is not graph:
        raise ValueError("supplied table does not match (graph, order, 2r)")
    clusters: dict[int, set[int]] = {v: set() for v in range(graph.n)}
    for w in range(graph.n):
        for v in table.entries[w]:
            clusters[v].add(w)
    frozen = {v: frozenset(members) for v, members in clusters.items()}
    radii = {
        v: int(graph.eccentricity_within(v, members))
        for v, members in frozen.items()
    }
    degree = wcol_value(table)
    return Cover(
        r=r,
        clusters=frozen,
        degree=degree,
        radius_bound=2 * r,
        measured_radii=radii,
        table=table,
    )


def build_rsets(graph: Graph, order: LinearOrder, r: int, cover: Cover) -> RSets:
    """R_v: vertices of X_v whose minimum weakly r-reachable vertex is v.

    The R_v partition the vertex set; the nonempty ones name exactly the
    members of the greedy dominating set.
    """
    if cover.r != r:
        raise ValueError(f"cover was built for r={cover.r}, asked for r={r}")
    table = cover.table
    sets: dict[int, set[int]] = {v: set() for v in range(graph.n)}
    for w in range(graph.n):
        sets[table.min_wreach(w, radius=r)].add(w)
    return RSets(r=r, sets={v: frozenset(s) for v, s in sets.items()})


def verify_cover(graph: Graph, r: int, cover: Cover) -> CheckReport:
    """Check the three cover obligations directly on the graph.

    (a) every closed r-ball is inside some cluster, (b) every cluster has
    radius <= 2r around its center (which also forces connectivity), and
    (c) for every v and every w in R_v, the closed r-ball of w lies in X_v.
    Failures carry a concrete witness.
    """
    failures: list[str] = []
    ext = graph.external_id

    for v in range(graph.n):
        ball = graph.bfs_distances(v, max_depth=r).keys()
        if not any(ball <= cluster for cluster in cover.clusters.values()):
            failures.append(f"N_{r}[{ext(v)}] not contained in any cluster")

    for v, members in cover.clusters.items():
        if not members:
            failures.append(f"cluster of {ext(v)} is empty (must contain its center)")
            continue
        if v not in members:
            failures.append(f"cluster of {ext(v)} misses its center")
            continue
        ecc = graph.eccentricity_within(v, members)
        if ecc == INFINITY:
            failures.append(f"cluster of {ext(v)} is not connected")
        elif ecc > 2 * r:
            failures.append(f"cluster of {ext(v)} has radius {ecc} > {2 * r}")

    rsets = build_rsets(graph, _order_of(cover), r, cover)
    for v, members in rsets.sets.items():
        cluster = cover.clusters[v]
        for w in members:
            ball = set(graph.bfs_distances(w, max_depth=r))
            if not ball <= cluster:
                missing = sorted(ext(x) for x in ball - cluster)
                failures.append(
                    f"N_{r}[{ext(w)}] escapes X_{ext(v)} (w in R_v); missing {missing}"
                )
    return CheckReport(passed=not failures, failures=failures)


def _order_of(cover: Cover) -> LinearOrder:
    return cover.table.order


def cover_to_json_dict(graph: Graph, cover: Cover) -> dict:
    ext = graph.external_id
    return {
        "r": cover.r,
        "clusters": {
            str(ext(v)): sorted(ext(w) for w in members)
            for v, members in cover.clusters.items()
        },
        "degree": cover.degree,
        "max_measured_radius": cover.max_measured_radius,
    }


def cover_to_json(graph: Graph, cover: Cover) -> str:
    return json.dumps(cover_to_json_dict(graph, cover), sort_keys=True)


def cover_to_dot(graph: Graph, cover: Cover, center: int) -> str:
    """DOT rendering with one chosen cluster highlighted."""
    ext = graph.external_id
    chosen = cover.clusters.get(center, frozenset())
    lines = ["graph cover {"]
    for v in range(graph.n):
        style = ' [style=filled, fillcolor=lightblue]' if v in chosen else ""
        lines.append(f'  "{ext(v)}"{style};')
    for u, v in graph.edges():
        lines.append(f'  "{ext(u)}" -- "{ext(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
