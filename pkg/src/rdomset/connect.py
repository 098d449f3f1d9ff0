"""Connecting distance-r dominating sets.

Two constructions.  The reachability route adds, for every kept dominator, the
stored witnessing paths to everything weakly (2r+1)-reachable from it; any two
dominators within distance 2r+1 then meet through the path minimum, and an
induction over dominator distances connects everything.  The minor route
partitions the graph into blocks of radius at most r around the dominators
(lexicographically least shortest paths decide ownership), contracts the
blocks into a depth-r minor, and re-expands each minor edge into one
lexicographically least short path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .graph import Graph
from .ordering import LinearOrder, WReachTable, wcol_value


class DominationError(ValueError):
    """Input set fails to distance-r dominate; carries a witness vertex."""

    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class DPartition:
    r: int
    dominators: frozenset[int]
    blocks: dict[int, frozenset[int]]
    lex_paths: dict[tuple[int, int], tuple[int, ...]]
    n_components: int


@dataclass(frozen=True)
class MinorGraph:
    """Quotient of the graph by the blocks: one vertex per dominator, an edge
    whenever some graph edge crosses between two blocks."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]
    branch_sets: dict[int, frozenset[int]]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def average_degree(self) -> float:
        if not self.vertices:
            return 0.0
        return 2 * len(self.edges) / len(self.vertices)

    @property
    def edge_density(self) -> float:
        if not self.vertices:
            return 0.0
        return len(self.edges) / len(self.vertices)

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        from collections import deque

        start = next(iter(self.vertices))
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in self.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class ConnectedResult:
    r: int
    members_in: frozenset[int]
    members: frozenset[int]
    added_paths: tuple[tuple[int, ...], ...]
    bounds: dict[str, float]
    n_components: int
    minor: MinorGraph | None = field(default=None, repr=False)


IdFunc = Callable[[int], int]


def _id_func(graph: Graph, ids: IdFunc | None) -> IdFunc:
    return graph.external_id if ids is None else ids


def lex_bfs_paths(
    graph: Graph, source: int, ids: IdFunc | None = None, max_len: int | None = None
) -> dict[int, tuple[int, ...]]:
    """Lexicographically least shortest path from ``source`` to every vertex
    within ``max_len`` steps.  Shorter always beats longer; equal lengths
    compare by the id sequence read from the source.  Level-wise minimization
    is canonical because prefixes of optimal paths are optimal."""
    idf = _id_func(graph, ids)
    best: dict[int, tuple[int, ...]] = {source: (source,)}
    frontier = [source]
    depth = 0
    while frontier and (max_len is None or depth < max_len):
        depth += 1
        candidates: dict[int, tuple[int, ...]] = {}
        for u in frontier:
            base = best[u]
            for x in graph.neighbors(u):
                if x in best:
                    continue
                cand = base + (x,)
                cur = candidates.get(x)
                if cur is None or _lex_key(idf, cand) < _lex_key(idf, cur):
                    candidates[x] = cand
        best.update(candidates)
        frontier = list(candidates)
    return best


def _lex_key(idf: IdFunc, path: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(idf(x) for x in path)


def lex_shortest_path(
    graph: Graph,
    v: int,
    w: int,
    max_len: int | None = None,
    ids: IdFunc | None = None,
) -> tuple[int, ...] | None:
    """Unique minimum path from v to w under (length, id-sequence), or None if
    none exists within ``max_len``."""
    return lex_bfs_paths(graph, v, ids, max_len).get(w)


def d_partition(
    graph: Graph, dominators: frozenset[int] | set[int], r: int, ids: IdFunc | None = None
) -> DPartition:
    """Assign every vertex to the dominator whose lexicographically least
    shortest path to it beats all others.

    The winning path has length at most r (the set dominates), stays inside
    the winner's block, and distinct dominators can never tie (their path id
    sequences start differently), so the blocks partition the vertex set.
    """
    dominators = frozenset(dominators)
    idf = _id_func(graph, ids)
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    per_vertex: dict[int, list[tuple[tuple[int, ...], tuple[int, ...], int]]] = {
        w: [] for w in range(graph.n)
    }
    for v in sorted(dominators):
        reach = lex_bfs_paths(graph, v, ids, max_len=r)
        for w, path in reach.items():
            paths[(v, w)] = path
            per_vertex[w].append((_rank(idf, path), path, v))
    blocks: dict[int, set[int]] = {v: set() for v in dominators}
    for w in range(graph.n):
        if not per_vertex[w]:
            raise DominationError(
                f"vertex {graph.external_id(w)} has no dominator within distance {r}",
                witness=w,
            )
        _, _, winner = min(per_vertex[w])
        blocks[winner].add(w)
    return DPartition(
        r=r,
        dominators=dominators,
        blocks={v: frozenset(b) for v, b in blocks.items()},
        lex_paths=paths,
        n_components=len(graph.connected_components()),
    )


def _rank(idf: IdFunc, path: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (len(path), _lex_key(idf, path))


def contract_minor(graph: Graph, partition: DPartition) -> MinorGraph:
    """Contract each block to its dominator; keep one edge per crossing pair."""
    owner: dict[int, int] = {}
    for v, members in partition.blocks.items():
        for w in members:
            owner[w] = v
    edges: set[tuple[int, int]] = set()
    for x, y in graph.edges():
        a, b = owner[x], owner[y]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return MinorGraph(
        vertices=partition.dominators,
        edges=frozenset(edges),
        branch_sets=dict(partition.blocks),
    )


def connect_via_wreach(
    graph: Graph,
    order: LinearOrder,
    dominators: frozenset[int] | set[int],
    r: int,
    table: WReachTable,
) -> ConnectedResult:
    """Connect a dominating set by adding, for each member, the stored paths to
    all of its weakly (2r+1)-reachable vertices."""
    dominators = frozenset(dominators)
    if table.radius != 2 * r + 1:
        raise ValueError(f"need a table at radius {2 * r + 1}, got {table.radius}")
    if table.order != order:
        raise ValueError("table was built for a different order")
    missing = _undominated(graph, dominators, r)
    if missing is not None:
        raise DominationError(
            f"vertex {graph.external_id(missing)} is not dominated", witness=missing
        )
    members = set(dominators)
    added: list[tuple[int, ...]] = []
    for v in sorted(dominators):
        for _, path in table.items(v):
            members.update(path)
            added.append(path)
    c_prime = wcol_value(table)
    bounds = {
        "max_wreach": c_prime,
        "size_bound": len(dominators) * (1 + (2 * r + 1) * c_prime),
    }
    return ConnectedResult(
        r=r,
        members_in=dominators,
        members=frozenset(members),
        added_paths=tuple(added),
        bounds=bounds,
        n_components=len(graph.connected_components()),
    )


def connect_via_minor(
    graph: Graph,
    dominators: frozenset[int] | set[int],
    r: int,
    ids: IdFunc | None = None,
) -> ConnectedResult:
    """Connect a dominating set through its block minor: every minor edge is
    re-expanded into the lexicographically least path of length <= 2r+1 between
    the two dominators (both endpoints compute the same path, oriented from the
    smaller id)."""
    dominators = frozenset(dominators)
    idf = _id_func(graph, ids)
    partition = d_partition(graph, dominators, r, ids)
    minor = contract_minor(graph, partition)
    members = set(dominators)
    added: list[tuple[int, ...]] = []
    for u, v in sorted(minor.edges):
        a, b = (u, v) if idf(u) <= idf(v) else (v, u)
        path = lex_shortest_path(graph, a, b, max_len=2 * r + 1, ids=ids)
        if path is None:  # impossible: blocks have radius <= r and share an edge
            raise AssertionError(
                f"minor-adjacent dominators {idf(u)},{idf(v)} farther than {2 * r + 1}"
            )
        members.update(path)
        added.append(path)
    bounds = {
        "minor_edges": minor.edge_count,
        "edge_density": minor.edge_density,
        "average_degree": minor.average_degree,
        "size_bound": len(dominators) + 2 * r * minor.edge_count,
    }
    return ConnectedResult(
        r=r,
        members_in=dominators,
        members=frozenset(members),
        added_paths=tuple(added),
        bounds=bounds,
        n_components=len(graph.connected_components()),
        minor=minor,
    )


def _undominated(graph: Graph, members: frozenset[int], r: int) -> int | None:
    covered = graph.closed_ball_of_set(members, r)
    for v in range(graph.n):
        if v not in covered:
            return v
    return None


_DOT_COLORS = (
    "lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon",
    "lightcyan", "wheat", "thistle", "honeydew",
)


def partition_to_dot(graph: Graph, partition: DPartition) -> str:
    """DOT rendering with one fill color per block."""
    ext = graph.external_id
    color_of: dict[int, str] = {}
    for i, v in enumerate(sorted(partition.blocks)):
        color_of[v] = _DOT_COLORS[i % len(_DOT_COLORS)]
    owner: dict[int, int] = {}
    for v, members in partition.blocks.items():
        for w in members:
            owner[w] = v
    lines = ["graph blocks {"]
    for v in range(graph.n):
        if v in owner:
            lines.append(f'  "{ext(v)}" [style=filled, fillcolor={color_of[owner[v]]}];')
        else:
            lines.append(f'  "{ext(v)}";')
    for u, v in graph.edges():
        lines.append(f'  "{ext(u)}" -- "{ext(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def connected_result_to_json_dict(graph: Graph, result: ConnectedResult) -> dict:
    ext = graph.external_id
    doc = {
        "r": result.r,
        "D": sorted(ext(v) for v in result.members_in),
        "D_prime": sorted(ext(v) for v in result.members),
        "added_paths": [[ext(x) for x in path] for path in result.added_paths],
        "bounds": dict(result.bounds),
        "components": result.n_components,
    }
    if result.minor is not None:
        doc["minor"] = {
            "vertices": sorted(ext(v) for v in result.minor.vertices),
            "edges": sorted(sorted([ext(a), ext(b)]) for a, b in result.minor.edges),
        }
    return doc


def check_d_partition(graph: Graph, partition: DPartition) -> list[str]:
    """Partition / connectivity / radius obligations, with witnesses."""
    failures: list[str] = []
    ext = graph.external_id
    seen: set[int] = set()
    for v, members in partition.blocks.items():
        if v not in members:
            failures.append(f"block of {ext(v)} misses its own center")
        overlap = seen & members
        if overlap:
            failures.append(
                f"blocks overlap on {sorted(ext(x) for x in overlap)}"
            )
        seen |= members
        if not graph.is_connected_subset(members):
            failures.append(f"block of {ext(v)} is not connected")
        else:
            ecc = graph.eccentricity_within(v, members)
            if ecc > partition.r:
                failures.append(
                    f"block of {ext(v)} has center-eccentricity {ecc} > {partition.r}"
                )
    if len(seen) != graph.n:
        missing = sorted(ext(x) for x in set(range(graph.n)) - seen)
        failures.append(f"blocks miss vertices {missing}")
    return failures


def check_connected_result(
    graph: Graph, result: ConnectedResult
) -> list[str]:
    """Domination, containment, size-bound and per-component connectivity."""
    failures: list[str] = []
    ext = graph.external_id
    if not result.members_in <= result.members:
        failures.append("input set not contained in output set")
    missing = _undominated(graph, result.members, result.r)
    if missing is not None:
        failures.append(f"output does not dominate {ext(missing)}")
    if len(result.members) > result.bounds["size_bound"]:
        failures.append(
            f"size {len(result.members)} exceeds bound {result.bounds['size_bound']}"
        )
    for comp in graph.connected_components():
        part = result.members & comp
        if part and not graph.is_connected_subset(part):
            failures.append("output not connected within a component")
    return failures
