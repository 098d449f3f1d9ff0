"""Sequential greedy distance-r domination driven by a linear order.

Walk the vertices in ascending order; from each one run a BFS that only enters
larger vertices and stops after r steps; keep the vertex whenever its search
still finds something undominated.  The kept set equals
{ min WReach_r[G,L,w] : w in V(G) }, and its size is at most the measured
maximum weak 2r-reachability set size times the optimum.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Graph
from .ordering import LinearOrder, WReachTable, wcol_value, wreach


@dataclass
class SearchStats:
    """Work accounting for the restricted searches.

    ``marked`` counts vertices entered (the search sets); ``stop_touches``
    counts the single below-threshold adjacency entry each explored vertex may
    look at before its reverse scan stops.
    """

    marked: int = 0
    stop_touches: int = 0

    @property
    def visited(self) -> int:
        return self.marked + self.stop_touches


@dataclass(frozen=True)
class DomSetResult:
    r: int
    order: LinearOrder
    members: frozenset[int]
    witness: dict[int, int]
    certificate_c: int
    ratio_bound: int
    stats: SearchStats = field(repr=False)
    cluster_size_sum: int = 0


def sort_adjacency(graph: Graph, order: LinearOrder) -> Graph:
    """Copy of the graph whose adjacency lists ascend in the order.

    Two passes: clear all lists, then walk the vertices from the smallest and
    append each one to all of its neighbors' lists.  Linear time.
    """
    adjacency: list[list[int]] = [[] for _ in range(graph.n)]
    for v in order.sequence:
        for u in graph.neighbors(v):
            adjacency[u].append(v)
    return Graph(graph.external_ids, adjacency)


def restricted_bfs(
    sorted_graph: Graph,
    order: LinearOrder,
    v: int,
    r: int,
    stats: SearchStats | None = None,
) -> set[int]:
    """Vertices reachable from v in <= r steps through vertices larger than v.

    Requires adjacency sorted ascending per :func:`sort_adjacency`; each list is
    scanned from its largest end and abandoned at the first vertex not above v,
    so besides the result set at most one extra entry per explored vertex is
    ever looked at.  The source is part of the result (length-0 path).
    """
    pos = order.position
    pv = pos(v)
    visited = {v}
    queue = deque([(v, 0)])
    while queue:
        w, d = queue.popleft()
        if d >= r:
            continue
        for u in reversed(sorted_graph.neighbors(w)):
            if pos(u) <= pv:
                if stats is not None:
                    stats.stop_touches += 1
                break
            if u not in visited:
                visited.add(u)
                queue.append((u, d + 1))
    if stats is not None:
        stats.marked += len(visited)
    return visited


def domset(
    graph: Graph,
    order: LinearOrder,
    r: int,
    table: WReachTable | None = None,
) -> DomSetResult:
    """Greedy distance-r dominating set for the given order.

    ``witness`` maps every vertex to its dominator: the first (hence
    order-minimum) kept vertex whose search reached it.  ``certificate_c`` is
    the measured maximum weak 2r-reachability set size for this order, the
    instance-level approximation-ratio certificate; ``table`` may supply that
    table precomputed.
    """
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    sorted_graph = sort_adjacency(graph, order)
    stats = SearchStats()
    members: list[int] = []
    dominated = [False] * graph.n
    witness: dict[int, int] = {}
    for v in order.sequence:
        reach = restricted_bfs(sorted_graph, order, v, r, stats)
        fresh = [w for w in reach if not dominated[w]]
        if fresh:
            members.append(v)
            for w in fresh:
                dominated[w] = True
                witness[w] = v
    if table is None:
        table = wreach(graph, order, 2 * r)
    elif table.radius != 2 * r or table.order != order:
        raise ValueError("supplied table does not match (order, 2r)")
    certificate = wcol_value(table)
    return DomSetResult(
        r=r,
        order=order,
        members=frozenset(members),
        witness=witness,
        certificate_c=certificate,
        ratio_bound=certificate,
        stats=stats,
        cluster_size_sum=table.total_size(),
    )


def domset_by_definition(graph: Graph, order: LinearOrder, r: int) -> frozenset[int]:
    """The defining set { min WReach_r[G,L,w] : w }, computed from the
    reachability table rather than the greedy walk.  Used to cross-check that
    the two characterizations coincide."""
    table = wreach(graph, order, r)
    return frozenset(table.min_wreach(w) for w in range(graph.n))


def check_domination(graph: Graph, members: frozenset[int], r: int) -> int | None:
    """Return an undominated vertex, or None when members r-dominate."""
    covered = graph.closed_ball_of_set(members, r)
    for v in range(graph.n):
        if v not in covered:
            return v
    return None
