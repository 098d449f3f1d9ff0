"""Linear orders on vertices and weakly reachable sets with witnessing paths.

A vertex u is weakly k-reachable from v under an order L when some path of
length at most k joins them and u is the L-minimum vertex on that path.  The
table built here stores, for every vertex v and every such u, the canonical
witnessing path: shortest first, ties broken by the lexicographically least
super-id sequence read from u to v.  The distributed protocol converges to
exactly the same paths, which is what makes the two sides comparable
bit-for-bit.
"""

from __future__ import annotations

import json
import random as _random
from typing import Iterable, Sequence

from .graph import Graph, peeling_order


class LinearOrder:
    """Total order on the vertices of a graph.

    ``position(v)`` (the super-id) is the 0-based rank of vertex v; smaller
    position means smaller in the order.
    """

    __slots__ = ("sequence", "_position")

    def __init__(self, sequence: Sequence[int]):
        self.sequence = tuple(sequence)
        self._position = {v: i for i, v in enumerate(self.sequence)}
        if len(self._position) != len(self.sequence):
            raise ValueError("order sequence repeats a vertex")

    def __len__(self) -> int:
        return len(self.sequence)

    def position(self, v: int) -> int:
        return self._position[v]

    def vertex_at(self, position: int) -> int:
        return self.sequence[position]

    def less(self, u: int, v: int) -> bool:
        return self._position[u] < self._position[v]

    def positions(self) -> dict[int, int]:
        return dict(self._position)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearOrder) and self.sequence == other.sequence

    def __hash__(self) -> int:
        return hash(self.sequence)

    def to_external_ids(self, graph: Graph) -> list[int]:
        return [graph.external_id(v) for v in self.sequence]

    @classmethod
    def from_external_ids(cls, graph: Graph, ids: Iterable[int]) -> "LinearOrder":
        seq = [graph.index_of(i) for i in ids]
        if len(seq) != graph.n:
            raise ValueError(f"order lists {len(seq)} vertices, graph has {graph.n}")
        return cls(seq)


def natural_order(graph: Graph) -> LinearOrder:
    """Order by ascending external id (== ascending index)."""
    return LinearOrder(range(graph.n))


def random_order(graph: Graph, seed: int) -> LinearOrder:
    seq = list(range(graph.n))
    _random.Random(seed).shuffle(seq)
    return LinearOrder(seq)


def degeneracy_order(graph: Graph) -> LinearOrder:
    """Order from minimum-degree peeling; ties favor small external ids early."""
    sequence, _ = peeling_order(graph)
    return LinearOrder(sequence)


def graph_degeneracy(graph: Graph) -> int:
    return peeling_order(graph)[1]


def heuristic_wcol_order(graph: Graph, k: int) -> LinearOrder:
    """Order intended to keep weak k-reachability sets small.

    Degeneracy peeling, independent of k; no optimality guarantee.  Every
    downstream size bound is certified against the measured table, so only
    quality, never correctness, depends on this choice.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return degeneracy_order(graph)


class WReachTable:
    """Per-vertex weakly reachable sets with canonical witnessing paths.

    ``entries[v]`` maps each weakly k-reachable vertex u to the witnessing path
    as a vertex tuple from u to v.  Every vertex carries its own length-0 path.
    """

    __slots__ = ("graph", "order", "radius", "entries")

    def __init__(
        self,
        graph: Graph,
        order: LinearOrder,
        radius: int,
        entries: Sequence[dict[int, tuple[int, ...]]],
    ):
        self.graph = graph
        self.order = order
        self.radius = radius
        self.entries = tuple(entries)

    def starts(self, v: int) -> frozenset[int]:
        return frozenset(self.entries[v])

    def path(self, v: int, u: int) -> tuple[int, ...]:
        return self.entries[v][u]

    def items(self, v: int) -> list[tuple[int, tuple[int, ...]]]:
        pos = self.order.position
        return sorted(self.entries[v].items(), key=lambda kv: pos(kv[0]))

    def size(self, v: int) -> int:
        return len(self.entries[v])

    def total_size(self) -> int:
        return sum(len(e) for e in self.entries)

    def min_wreach(self, v: int, radius: int | None = None) -> int:
        """L-minimum vertex weakly reachable from v within ``radius`` steps.

        Stored paths are shortest within the order-restricted reach, so the
        radius filter is a filter on stored path lengths.
        """
        limit = self.radius if radius is None else radius
        pos = self.order.position
        best = None
        for u, path in self.entries[v].items():
            if len(path) - 1 <= limit and (best is None or pos(u) < pos(best)):
                best = u
        assert best is not None  # v itself always qualifies
        return best

    def restricted_starts(self, v: int, radius: int) -> frozenset[int]:
        return frozenset(
            u for u, path in self.entries[v].items() if len(path) - 1 <= radius
        )

    def to_json_dict(self) -> dict:
        ext = self.graph.external_id
        entries = {
            str(ext(v)): [
                {"w": ext(u), "path": [ext(x) for x in path]}
                for u, path in self.items(v)
            ]
            for v in range(self.graph.n)
        }
        return {"radius": self.radius, "entries": entries}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def wreach(graph: Graph, order: LinearOrder, k: int) -> WReachTable:
    """Weak k-reachability table for a fixed order.

    Computed by one order-restricted BFS per source vertex: the search from v
    only ever enters vertices larger than v, so the vertices it reaches within
    k steps are exactly those from which v is weakly k-reachable.  Path ties
    are broken by the lexicographically least super-id sequence, level by
    level; a prefix of an optimal path is optimal, so the level-wise choice is
    globally canonical.
    """
    if k < 0:
        raise ValueError(f"radius must be >= 0, got {k}")
    entries: list[dict[int, tuple[int, ...]]] = [dict() for _ in range(graph.n)]
    pos = order.position
    for v in range(graph.n):
        for w, path in _restricted_lex_bfs(graph, pos, v, k).items():
            entries[w][v] = path
    return WReachTable(graph, order, k, entries)


def _restricted_lex_bfs(
    graph: Graph, pos, source: int, k: int
) -> dict[int, tuple[int, ...]]:
    """Best (shortest, then lex-least by super-id) paths from ``source`` using
    only vertices larger than it, out to k steps.  Returns vertex -> path."""
    sv = pos(source)
    best: dict[int, tuple[int, ...]] = {source: (source,)}
    frontier = [source]
    for _ in range(k):
        candidates: dict[int, tuple[int, ...]] = {}
        for u in frontier:
            base = best[u]
            for x in graph.neighbors(u):
                if pos(x) <= sv or x in best:
                    continue
                cand = base + (x,)
                cur = candidates.get(x)
                if cur is None or _sid_key(pos, cand) < _sid_key(pos, cur):
                    candidates[x] = cand
        if not candidates:
            break
        best.update(candidates)
        frontier = list(candidates)
    return best


def _sid_key(pos, path: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(pos(x) for x in path)


def wcol_value(table: WReachTable) -> int:
    """Max weakly-reachable-set size: an upper-bound witness for wcol at the
    table's radius under the table's order."""
    return max((len(e) for e in table.entries), default=0)


def verify_path_certificate(
    graph: Graph, order: LinearOrder, v: int, u: int, path: tuple[int, ...], k: int
) -> str | None:
    """Replay one stored witnessing path; return a complaint or None if valid."""
    if not path or path[0] != u or path[-1] != v:
        return f"path endpoints wrong for ({u}->{v}): {path}"
    if len(path) - 1 > k:
        return f"path too long for radius {k}: {path}"
    if len(set(path)) != len(path):
        return f"path repeats a vertex: {path}"
    for a, b in zip(path, path[1:]):
        if b not in graph.neighbors(a):
            return f"non-edge ({a},{b}) on path {path}"
    mn = min(path, key=order.position)
    if mn != u:
        return f"start {u} is not the order-minimum of path {path}"
    return None
