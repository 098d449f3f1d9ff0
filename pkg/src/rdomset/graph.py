"""Immutable simple-graph representation, BFS primitives, generators and file I/O.

Vertices are stored as dense indices ``0..n-1``; each index maps to an external
integer identifier.  Indices are assigned in ascending external-id order, so
comparing indices and comparing external ids induce the same order.
"""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INFINITY = math.inf


class GraphFormatError(ValueError):
    """Raised when an edge-list file or JSON document cannot be parsed."""


@dataclass(frozen=True)
class Ball:
    """Closed ball around ``center``: every vertex at distance <= radius."""

    center: int
    radius: int
    members: frozenset[int]


class Graph:
    """Finite undirected simple graph with adjacency lists.

    Immutable after construction and safe to share between threads.  Use
    :func:`build_graph` or the generators rather than the constructor directly;
    the constructor trusts its inputs.
    """

    __slots__ = ("n", "external_ids", "adjacency", "_index_of")

    def __init__(self, external_ids: Sequence[int], adjacency: Sequence[Sequence[int]]):
        self.n = len(external_ids)
        self.external_ids = tuple(external_ids)
        self.adjacency = tuple(tuple(nbrs) for nbrs in adjacency)
        self._index_of = {ext: i for i, ext in enumerate(self.external_ids)}

    # -- basic accessors ---------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def external_id(self, v: int) -> int:
        return self.external_ids[v]

    def index_of(self, external_id: int) -> int:
        return self._index_of[external_id]

    def has_vertex_id(self, external_id: int) -> bool:
        return external_id in self._index_of

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as an index pair (u, v) with u < v."""
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.edge_count()})"

    # -- distances and balls -----------------------------------------------

    def bfs_distances(self, source: int, max_depth: int | None = None) -> dict[int, int]:
        """Distances from ``source`` to every reachable vertex (<= max_depth)."""
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            d = dist[u]
            if max_depth is not None and d >= max_depth:
                continue
            for w in self.adjacency[u]:
                if w not in dist:
                    dist[w] = d + 1
                    queue.append(w)
        return dist

    def distance(self, u: int, v: int) -> float:
        """Shortest-path length between u and v; INFINITY if disconnected."""
        if u == v:
            return 0
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for w in self.adjacency[x]:
                if w == v:
                    return dist[x] + 1
                if w not in dist:
                    dist[w] = dist[x] + 1
                    queue.append(w)
        return INFINITY

    def closed_ball(self, v: int, r: int) -> Ball:
        """Exact closed r-neighborhood of v, computed by BFS."""
        if r < 0:
            raise ValueError(f"radius must be non-negative, got {r}")
        members = frozenset(self.bfs_distances(v, max_depth=r))
        return Ball(center=v, radius=r, members=members)

    def closed_ball_of_set(self, vertices: Iterable[int], r: int) -> frozenset[int]:
        """Union of closed r-balls around every vertex of the set."""
        seeds = list(vertices)
        dist = {v: 0 for v in seeds}
        queue = deque(seeds)
        while queue:
            u = queue.popleft()
            if dist[u] >= r:
                continue
            for w in self.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return frozenset(dist)

    # -- connectivity --------------------------------------------------------

    def connected_components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for v in range(self.n):
            if v in seen:
                continue
            members = set(self.bfs_distances(v))
            seen |= members
            comps.append(frozenset(members))
        return comps

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(self.bfs_distances(0)) == self.n

    def is_connected_subset(self, vertices: Iterable[int]) -> bool:
        """True if the induced subgraph on ``vertices`` is connected (or empty)."""
        members = set(vertices)
        if not members:
            return True
        start = next(iter(members))
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w in members and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(members)

    def eccentricity_within(self, center: int, vertices: Iterable[int]) -> float:
        """Max distance from ``center`` inside the induced subgraph; INFINITY if
        some member is unreachable there."""
        members = set(vertices)
        dist = {center: 0}
        queue = deque([center])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w in members and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if set(dist) != members:
            return INFINITY
        return max(dist.values(), default=0)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        """Canonical JSON form: sorted external-id list and sorted edge pairs."""
        edges = sorted(
            sorted((self.external_ids[u], self.external_ids[v])) for u, v in self.edges()
        )
        return {"n": self.n, "ids": list(self.external_ids), "edges": edges}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_edge_list_text(self) -> str:
        """Edge-list text: one ``u v`` pair per line, plus a ``vertices:`` header
        when the graph has vertices that no edge mentions."""
        lines = []
        touched: set[int] = set()
        for u, v in self.edges():
            touched.add(u)
            touched.add(v)
        isolated = [self.external_ids[v] for v in range(self.n) if v not in touched]
        if isolated or self.edge_count() == 0:
            lines.append("vertices: " + " ".join(str(i) for i in self.external_ids))
        for u, v in sorted(
            sorted((self.external_ids[a], self.external_ids[b])) for a, b in self.edges()
        ):
            lines.append(f"{u} {v}")
        return "\n".join(lines) + "\n"


def build_graph(
    edge_list: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None
) -> Graph:
    """Build a canonical Graph from external-id pairs.

    Duplicate edges collapse; a self-loop pair is rejected.  Isolated vertices
    exist only if named in ``vertices``.
    """
    ids: set[int] = set()
    edge_set: set[tuple[int, int]] = set()
    for pair in edge_list:
        u, v = pair
        if not isinstance(u, int) or not isinstance(v, int) or u < 0 or v < 0:
            raise ValueError(f"vertex ids must be non-negative integers, got {pair!r}")
        if u == v:
            raise ValueError(f"self-loop not allowed: {pair!r}")
        ids.add(u)
        ids.add(v)
        edge_set.add((min(u, v), max(u, v)))
    if vertices is not None:
        for v in vertices:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"vertex ids must be non-negative integers, got {v!r}")
            ids.add(v)
    ordered = sorted(ids)
    index = {ext: i for i, ext in enumerate(ordered)}
    adjacency: list[list[int]] = [[] for _ in ordered]
    for u, v in sorted(edge_set):
        adjacency[index[u]].append(index[v])
        adjacency[index[v]].append(index[u])
    for nbrs in adjacency:
        nbrs.sort()
    return Graph(ordered, adjacency)


def from_json_dict(doc: dict) -> Graph:
    try:
        ids = doc["ids"]
        edges = doc["edges"]
    except (TypeError, KeyError) as exc:
        raise GraphFormatError(f"missing graph field: {exc}") from exc
    return build_graph([tuple(e) for e in edges], vertices=ids)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format.

    One ``u v`` pair per line; ``#`` starts a comment; an optional line
    ``vertices: i j k ...`` declares the full vertex set (for isolated
    vertices).  Malformed lines raise :class:`GraphFormatError` with the line
    number.
    """
    edges: list[tuple[int, int]] = []
    declared: list[int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            try:
                declared = [int(tok) for tok in line[len("vertices:"):].split()]
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: bad vertex list: {raw!r}") from exc
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {raw!r}") from exc
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop ({u},{v}) not allowed")
        edges.append((u, v))
    try:
        return build_graph(edges, vertices=declared)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def load_graph(path: str) -> Graph:
    """Load a graph file; JSON if it looks like JSON, edge-list text otherwise."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: invalid JSON: {exc}") from exc
        return from_json_dict(doc)
    return parse_edge_list(text)


# -- generators --------------------------------------------------------------

GENERATOR_FAMILIES = (
    "path",
    "cycle",
    "star",
    "complete",
    "grid",
    "random_tree",
    "partial_ktree",
)


def generate(family: str, *params, seed: int | None = None) -> Graph:
    """Generate a named test-family graph, deterministic for a fixed seed.

    Families: path(n), cycle(n), star(n), complete(n), grid(rows, cols),
    random_tree(n), partial_ktree(n, k, p).
    """
    if family == "path":
        (n,) = _int_params(params, 1, family)
        if n < 1:
            raise ValueError("path needs n >= 1")
        return build_graph([(i, i + 1) for i in range(n - 1)], vertices=range(n))
    if family == "cycle":
        (n,) = _int_params(params, 1, family)
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return build_graph([(i, (i + 1) % n) for i in range(n)])
    if family == "star":
        (n,) = _int_params(params, 1, family)
        if n < 2:
            raise ValueError("star needs n >= 2")
        return build_graph([(0, i) for i in range(1, n)])
    if family == "complete":
        (n,) = _int_params(params, 1, family)
        if n < 1:
            raise ValueError("complete needs n >= 1")
        return build_graph(
            [(i, j) for i in range(n) for j in range(i + 1, n)], vertices=range(n)
        )
    if family == "grid":
        rows, cols = _int_params(params, 2, family)
        if rows < 1 or cols < 1:
            raise ValueError("grid needs rows, cols >= 1")
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return build_graph(edges, vertices=range(rows * cols))
    if family == "random_tree":
        (n,) = _int_params(params, 1, family)
        if n < 1:
            raise ValueError("random_tree needs n >= 1")
        rng = random.Random(seed)
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        return build_graph(edges, vertices=range(n))
    if family == "partial_ktree":
        if len(params) != 3:
            raise ValueError("partial_ktree needs (n, k, p)")
        n, k = int(params[0]), int(params[1])
        p = float(params[2])
        if n < 1 or k < 1 or not 0.0 <= p <= 1.0:
            raise ValueError("partial_ktree needs n >= 1, k >= 1, 0 <= p <= 1")
        return _partial_ktree(n, k, p, random.Random(seed))
    raise ValueError(f"unknown family {family!r}; known: {', '.join(GENERATOR_FAMILIES)}")


def _int_params(params: tuple, count: int, family: str) -> tuple[int, ...]:
    if len(params) != count:
        raise ValueError(f"{family} takes {count} parameter(s), got {len(params)}")
    return tuple(int(p) for p in params)


def _partial_ktree(n: int, k: int, p: float, rng: random.Random) -> Graph:
    # Build a k-tree (every new vertex joins a random existing k-clique), then
    # independently keep each edge with probability p.
    base = min(n, k + 1)
    edges = {(i, j) for i in range(base) for j in range(i + 1, base)}
    cliques = [tuple(c) for c in _ksubsets(range(base), min(k, base))]
    for v in range(base, n):
        attach = cliques[rng.randrange(len(cliques))]
        for u in attach:
            edges.add((min(u, v), max(u, v)))
        for u in attach:
            new_clique = tuple(sorted((set(attach) - {u}) | {v}))
            cliques.append(new_clique)
    kept = [e for e in sorted(edges) if p >= 1.0 or rng.random() < p]
    return build_graph(kept, vertices=range(n))


def _ksubsets(items: Iterable[int], k: int) -> list[tuple[int, ...]]:
    from itertools import combinations

    return list(combinations(items, k))


def peeling_order(graph: Graph) -> tuple[list[int], int]:
    """Repeated minimum-degree removal.

    Returns ``(sequence, degeneracy)`` where ``sequence`` lists vertices in the
    produced linear order (first = smallest) and ``degeneracy`` is the largest
    degree seen at removal time.  Among minimum-degree candidates the vertex
    with the largest external id is peeled first, so smaller ids land earlier
    in the order.  Each removed vertex is placed last among the not yet placed
    ones, which bounds every vertex's smaller-neighbor count by the degeneracy.
    """
    import heapq

    n = graph.n
    degree = [graph.degree(v) for v in range(n)]
    alive = [True] * n
    # (degree, -index) so the heap pops min degree, largest index first;
    # stale entries are skipped lazily after degree updates.
    heap = [(degree[v], -v) for v in range(n)]
    heapq.heapify(heap)
    removal: list[int] = []
    degeneracy = 0
    while len(removal) < n:
        d, neg = heapq.heappop(heap)
        v = -neg
        if not alive[v] or d != degree[v]:
            continue
        degeneracy = max(degeneracy, d)
        alive[v] = False
        removal.append(v)
        for u in graph.neighbors(v):
            if alive[u]:
                degree[u] -= 1
                heapq.heappush(heap, (degree[u], -u))
    removal.reverse()
    return removal, degeneracy
