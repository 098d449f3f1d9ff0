"""Exhaustive ground truth on small instances.

Everything here is definition-level: subsets are enumerated by increasing
cardinality, paths by explicit DFS, orders by permutations.  Size limits keep
each call comfortably under a minute; raise them at your own risk.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .graph import Graph
from .ordering import LinearOrder, WReachTable

DOMSET_LIMIT = 18
CONNECTED_DOMSET_LIMIT = 14
WCOL_LIMIT = 8
WREACH_LIMIT = 10


class OracleLimitError(ValueError):
    """Instance too large for exhaustive search."""


def _check_limit(graph: Graph, limit: int, what: str) -> None:
    if graph.n > limit:
        raise OracleLimitError(f"{what}: n={graph.n} exceeds exhaustive limit {limit}")


def min_domset(graph: Graph, r: int, limit_n: int = DOMSET_LIMIT) -> tuple[frozenset[int], int]:
    """Minimum distance-r dominating set by increasing-cardinality search.

    Returns the lexicographically least optimum (by external id) and its size.
    """
    _check_limit(graph, limit_n, "min_domset")
    if graph.n == 0:
        return frozenset(), 0
    balls = [_ball_mask(graph, v, r) for v in range(graph.n)]
    full = (1 << graph.n) - 1
    vertices = list(range(graph.n))  # index order == external-id order
    for size in range(1, graph.n + 1):
        for subset in combinations(vertices, size):
            mask = 0
            for v in subset:
                mask |= balls[v]
            if mask == full:
                return frozenset(subset), size
    raise AssertionError("V(G) always dominates")  # pragma: no cover


def min_connected_domset(
    graph: Graph, r: int, limit_n: int = CONNECTED_DOMSET_LIMIT
) -> tuple[frozenset[int], int]:
    """Minimum connected distance-r dominating set of a connected graph."""
    _check_limit(graph, limit_n, "min_connected_domset")
    if not graph.is_connected():
        raise ValueError("min_connected_domset requires a connected graph")
    if graph.n == 0:
        return frozenset(), 0
    balls = [_ball_mask(graph, v, r) for v in range(graph.n)]
    full = (1 << graph.n) - 1
    vertices = list(range(graph.n))
    for size in range(1, graph.n + 1):
        for subset in combinations(vertices, size):
            mask = 0
            for v in subset:
                mask |= balls[v]
            if mask == full and graph.is_connected_subset(subset):
                return frozenset(subset), size
    raise AssertionError("V(G) always dominates")  # pragma: no cover


def _ball_mask(graph: Graph, v: int, r: int) -> int:
    mask = 0
    for u in graph.bfs_distances(v, max_depth=r):
        mask |= 1 << u
    return mask


def exact_wcol(graph: Graph, k: int, limit_n: int = WCOL_LIMIT) -> tuple[int, LinearOrder]:
    """Exact weak k-coloring number: minimum over all n! orders of the largest
    weakly reachable set.  Returns the value and the first witnessing order in
    lexicographic enumeration."""
    _check_limit(graph, limit_n, "exact_wcol")
    if graph.n == 0:
        return 0, LinearOrder(())
    best_value: int | None = None
    best_order: tuple[int, ...] | None = None
    for perm in permutations(range(graph.n)):
        order = LinearOrder(perm)
        value = _max_wreach_size(graph, order, k)
        if best_value is None or value < best_value:
            best_value = value
            best_order = perm
    assert best_value is not None and best_order is not None
    return best_value, LinearOrder(best_order)


def _max_wreach_size(graph: Graph, order: LinearOrder, k: int) -> int:
    counts = [0] * graph.n
    pos = order.position
    for v in range(graph.n):
        reached = _restricted_reach(graph, pos, v, k)
        for w in reached:
            counts[w] += 1
    return max(counts)


def _restricted_reach(graph: Graph, pos, source: int, k: int) -> set[int]:
    # plain BFS restricted to vertices above the source; set only, no paths
    sv = pos(source)
    seen = {source}
    frontier = [source]
    for _ in range(k):
        nxt = []
        for u in frontier:
            for x in graph.neighbors(u):
                if pos(x) > sv and x not in seen:
                    seen.add(x)
                    nxt.append(x)
        if not nxt:
            break
        frontier = nxt
    return seen


def wreach_bruteforce(
    graph: Graph, order: LinearOrder, k: int, limit_n: int = WREACH_LIMIT
) -> WReachTable:
    """Definition-level weak k-reachability: enumerate every simple path of
    length <= k, keep those whose order-minimum is the start vertex, and for
    each (owner, start) pair keep the shortest path, ties by lex-least super-id
    sequence.  Independent of the BFS used by :func:`rdomset.ordering.wreach`."""
    _check_limit(graph, limit_n, "wreach_bruteforce")
    if k < 0:
        raise ValueError(f"radius must be >= 0, got {k}")
    pos = order.position
    entries: list[dict[int, tuple[int, ...]]] = [dict() for _ in range(graph.n)]

    def consider(path: tuple[int, ...]) -> None:
        start, end = path[0], path[-1]
        if min(path, key=pos) != start:
            return
        key = tuple(pos(x) for x in path)
        cur = entries[end].get(start)
        if cur is None:
            entries[end][start] = path
            return
        cur_key = tuple(pos(x) for x in cur)
        if (len(key), key) < (len(cur_key), cur_key):
            entries[end][start] = path

    def extend(path: list[int], used: set[int]) -> None:
        consider(tuple(path))
        if len(path) - 1 == k:
            return
        for x in graph.neighbors(path[-1]):
            if x not in used:
                path.append(x)
                used.add(x)
                extend(path, used)
                used.remove(x)
                path.pop()

    for v in range(graph.n):
        extend([v], {v})
    return WReachTable(graph, order, k, entries)
