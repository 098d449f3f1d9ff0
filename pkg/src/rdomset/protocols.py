"""Distributed protocols for the round simulator.

The path-broadcast protocol floods witnessing paths: every vertex starts by
broadcasting its own super-id as a length-0 path and thereafter re-broadcasts
any stored path it improves.  A receiver extends each incoming path by itself,
keeps it only when the path's first vertex is smaller than itself, and per
first vertex retains the (shortest, then lex-least by super-id) candidate.
Because a vertex only ever forwards paths that start below it, everything a
vertex stores after k broadcast rounds is exactly its weak k-reachability set
with the same canonical paths as the sequential computation.

On top of that: dominating-set election sends an "include me" token backwards
along the stored path to the order-minimum of each vertex's weak r-reach;
the broadcast connector notifies every vertex on every stored path; and the
LOCAL connector gathers (2r+1)-neighborhoods, builds the dominator blocks and
block-minor locally, and notifies the interiors of the chosen lex paths from
both endpoints within r further rounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .encoding import id_width
from .graph import Graph, build_graph, peeling_order
from .ordering import LinearOrder, heuristic_wcol_order
from .sim import (
    CONGEST_BC,
    DEFAULT_CONFIG,
    LOCAL,
    Message,
    RoundTrace,
    SimConfig,
    SimModel,
    SimResult,
    VertexContext,
    VertexProcess,
    run,
)


class ProtocolInvariantError(RuntimeError):
    """A structural property the correctness proofs rely on was violated."""


# ---------------------------------------------------------------------------
# toy protocols (simulator exercises)


class EchoProcess(VertexProcess):
    """Broadcast own id once; output it after the first exchange."""

    def __init__(self, ctx: VertexContext):
        self.me = ctx.vertex

    def start(self):
        return Message("echo", [self.me])

    def step(self, round_no, inbox):
        self.output = self.me
        return None


class FloodMaxProcess(VertexProcess):
    """Flood the maximum vertex id; everyone outputs it after ``rounds``."""

    def __init__(self, ctx: VertexContext, rounds: int):
        self.me = ctx.vertex
        self.rounds = rounds
        self.best = ctx.vertex
        if rounds == 0:
            self.output = self.best

    def start(self):
        return Message("flood", [self.best])

    def step(self, round_no, inbox):
        improved = False
        for _, msg in inbox:
            for item in msg.items:
                if isinstance(item, int) and item > self.best:
                    self.best = item
                    improved = True
        if round_no == self.rounds:
            self.output = self.best
            return None
        return Message("flood", [self.best]) if improved else None


class BlastProcess(VertexProcess):
    """Send one deliberately oversized message; used to test cap enforcement."""

    def __init__(self, ctx: VertexContext, words: int):
        self.words = words

    def start(self):
        return Message("blast", [tuple(0 for _ in range(self.words))])

    def step(self, round_no, inbox):
        self.output = True
        return None


# ---------------------------------------------------------------------------
# path broadcasting (weak reachability)


class WReachDistProcess(VertexProcess):
    """Learn the weak k-reachability set with canonical witnessing paths.

    Wire paths are super-id sequences running from their first (minimum)
    vertex to the sender; a receiver appends itself.  k broadcast rounds
    suffice: an improvement stored in round t always has length t, and paths of
    full length k are stored but never forwarded.
    """

    def __init__(self, ctx: VertexContext, k: int, sid: int):
        self.n = ctx.n
        self.k = k
        self.sid = sid
        self.paths: dict[int, tuple[int, ...]] = {sid: (sid,)}
        self._fresh: list[tuple[int, ...]] = [(sid,)] if k > 0 else []
        if k == 0:
            self.output = {sid: (sid,)}

    def start(self):
        return self._drain()

    def _drain(self):
        if not self._fresh:
            return None
        msg = Message("paths", self._fresh)
        self._fresh = []
        return msg

    def _absorb_paths(self, inbox) -> None:
        improved: set[int] = set()
        for _, msg in inbox:
            if msg.kind != "paths":
                continue
            for q in msg.items:
                start = q[0]
                if start >= self.sid:
                    continue  # paths from above are discarded
                if len(q) > self.k or self.sid in q:
                    continue
                cand = q + (self.sid,)
                cur = self.paths.get(start)
                if cur is None or (len(cand), cand) < (len(cur), cur):
                    self.paths[start] = cand
                    improved.add(start)
        for start in sorted(improved):
            path = self.paths[start]
            if len(path) - 1 < self.k:
                self._fresh.append(path)

    def step(self, round_no, inbox):
        self._absorb_paths(inbox)
        if round_no == self.k:
            self.output = dict(self.paths)
            return None
        return self._drain()


# ---------------------------------------------------------------------------
# dominating-set election


class DomSetDistProcess(WReachDistProcess):
    """Path phase at radius 2r, then r election rounds.

    Every vertex elects the smallest super-id among starts whose stored path
    has length at most r and routes an inclusion token back along that path;
    relays check the closure property that the token's target is weakly
    r-reachable from them too.
    """

    def __init__(self, ctx: VertexContext, r: int, sid: int):
        super().__init__(ctx, k=2 * r, sid=sid)
        self.r = r
        self.in_set = False
        self.dominator: int | None = None
        self._tokens: list[tuple[int, ...]] = []

    @property
    def _final_round(self) -> int:
        return self.k + self.r

    def step(self, round_no, inbox):
        if round_no <= self.k:
            self._absorb_paths(inbox)
            if round_no < self.k:
                return self._drain()
            self._elect()
            return self._drain_tokens("elect")
        self._relay_tokens(inbox, "elect", self.r, self._on_elected)
        if round_no == self._final_round:
            if self._tokens:  # every token resolves within r relay rounds
                raise ProtocolInvariantError("election token outlived its relay window")
            self.output = {
                "in_set": self.in_set,
                "dominator": self.dominator,
                "wreach_size": len(self.paths),
            }
            return None
        return self._drain_tokens("elect")

    def _elect(self) -> None:
        best = None
        for start, path in self.paths.items():
            if len(path) - 1 <= self.r and (best is None or start < best):
                best = start
        assert best is not None  # own length-0 path always qualifies
        self.dominator = best
        if best == self.sid:
            self.in_set = True
        else:
            path = self.paths[best]
            self._tokens.append((len(path) - 2,) + path)

    def _on_elected(self) -> None:
        self.in_set = True

    def _drain_tokens(self, kind: str):
        if not self._tokens:
            return None
        msg = Message(kind, self._tokens)
        self._tokens = []
        return msg

    def _relay_tokens(self, inbox, kind: str, radius: int, on_target) -> None:
        for _, msg in inbox:
            if msg.kind != kind:
                continue
            for item in msg.items:
                hop, path = item[0], item[1:]
                if path[hop] != self.sid:
                    continue
                if hop == 0:
                    on_target()
                    continue
                target = path[0]
                entry = self.paths.get(target)
                if entry is None or len(entry) - 1 > radius:
                    raise ProtocolInvariantError(
                        f"vertex sid={self.sid} relays a token for sid={target} "
                        f"without {target} in its weak {radius}-reach"
                    )
                self._tokens.append((hop - 1,) + path)


# ---------------------------------------------------------------------------
# connected dominating set under broadcast-CONGEST


class CdsCongestProcess(DomSetDistProcess):
    """Order built for radius 2r+1, election at radius r, then every elected
    vertex pushes inclusion notifications along all of its stored paths."""

    def __init__(self, ctx: VertexContext, r: int, sid: int):
        WReachDistProcess.__init__(self, ctx, k=2 * r + 1, sid=sid)
        self.r = r
        self.in_set = False
        self.in_prime = False
        self.dominator: int | None = None
        self._tokens = []
        self._notifications: list[tuple[int, ...]] = []

    @property
    def _elect_round(self) -> int:
        return self.k + self.r

    @property
    def _last_round(self) -> int:
        return self.k + self.r + self.k  # notifications walk paths of length <= k

    def step(self, round_no, inbox):
        if round_no <= self.k:
            self._absorb_paths(inbox)
            if round_no < self.k:
                return self._drain()
            self._elect()
            return self._drain_tokens("elect")
        if round_no <= self._elect_round:
            self._relay_tokens(inbox, "elect", self.r, self._on_elected)
            if round_no < self._elect_round:
                return self._drain_tokens("elect")
            self._queue_notifications()
            return self._drain_notifications()
        self._relay_notifications(inbox)
        if round_no == self._last_round:
            self.output = {
                "in_set": self.in_set,
                "in_prime": self.in_prime,
                "dominator": self.dominator,
                "wreach_size": len(self.paths),
            }
            return None
        return self._drain_notifications()

    def _queue_notifications(self) -> None:
        if self._tokens:  # every election token resolves within r relay rounds
            raise ProtocolInvariantError("election token outlived its relay window")
        if not self.in_set:
            return
        self.in_prime = True
        for start in sorted(self.paths):
            path = self.paths[start]
            if len(path) >= 2:
                self._notifications.append((len(path) - 2,) + path)

    def _drain_notifications(self):
        if not self._notifications:
            return None
        msg = Message("notify", self._notifications)
        self._notifications = []
        return msg

    def _relay_notifications(self, inbox) -> None:
        for _, msg in inbox:
            if msg.kind != "notify":
                continue
            for item in msg.items:
                hop, path = item[0], item[1:]
                if path[hop] != self.sid:
                    continue
                self.in_prime = True
                if hop == 0:
                    continue
                target = path[0]
                if target not in self.paths:
                    raise ProtocolInvariantError(
                        f"vertex sid={self.sid} forwards a notification for "
                        f"sid={target} outside its weak {self.k}-reach"
                    )
                self._notifications.append((hop - 1,) + path)


# ---------------------------------------------------------------------------
# connected dominating set in LOCAL


class CdsLocalProcess(VertexProcess):
    """Turn injected dominator flags into a connected dominating set in 3r+1
    rounds: 2r+1 rounds of neighborhood gathering, then r rounds notifying the
    interiors of the chosen block-minor paths from both endpoints.

    Knowledge after t rounds: every vertex within distance t, every edge with
    an endpoint within t-1.  That is exactly enough for a dominator to build
    its block, find its minor neighbors, and fix the same lexicographically
    least connecting path as the other endpoint does.  Vertex indices are
    assigned in external-id order, so index comparisons realize the external-id
    lexicographic rule on the wire.
    """

    def __init__(self, ctx: VertexContext, r: int, in_set: bool):
        self.me = ctx.vertex
        self.r = r
        self.in_set = in_set
        self.in_prime = in_set
        self.aborted = False
        self.known_flags: dict[int, int] = {ctx.vertex: int(in_set)}
        self.known_edges: set[tuple[int, int]] = set()
        self._notifications: list[tuple[int, ...]] = []

    @property
    def _gather_rounds(self) -> int:
        return 2 * self.r + 1

    @property
    def _last_round(self) -> int:
        return 3 * self.r + 1

    def start(self):
        return self._knowledge_message()

    def _knowledge_message(self) -> Message:
        items: list[tuple[int, ...]] = [
            (0, v, flag) for v, flag in sorted(self.known_flags.items())
        ]
        items.extend((1, a, b) for a, b in sorted(self.known_edges))
        return Message("know", items)

    def step(self, round_no, inbox):
        if round_no <= self._gather_rounds:
            for sender, msg in inbox:
                if msg.kind != "know":
                    continue
                if round_no == 1:
                    self.known_edges.add(_edge(self.me, sender))
                for item in msg.items:
                    if item[0] == 0:
                        self.known_flags[item[1]] = item[2]
                    else:
                        self.known_edges.add((item[1], item[2]))
            if round_no < self._gather_rounds:
                return self._knowledge_message()
            self._conclude_gathering()
            return self._drain()
        self._relay(inbox)
        if round_no == self._last_round:
            if self.aborted:
                self.output = {"status": "abort_not_dominated"}
            else:
                self.output = {"in_set": self.in_prime}
            return None
        return self._drain()

    def _drain(self):
        if not self._notifications:
            return None
        msg = Message("half_notify", self._notifications)
        self._notifications = []
        return msg

    def _relay(self, inbox) -> None:
        for _, msg in inbox:
            if msg.kind != "half_notify":
                continue
            for item in msg.items:
                direction, pos, steps = item[0], item[1], item[2]
                path = item[3:]
                if path[pos] != self.me:
                    continue
                self.in_prime = True
                if steps > 0:
                    nxt = pos + 1 if direction == 0 else pos - 1
                    self._notifications.append((direction, nxt, steps - 1) + path)

    # -- local computation at the end of the gathering phase ------------------

    def _conclude_gathering(self) -> None:
        adjacency = _adjacency_of(self.known_edges)
        dominators = sorted(v for v, flag in self.known_flags.items() if flag)
        reach = {
            d: _lex_paths(adjacency, d, self.r) for d in dominators
        }
        if not any(self.me in paths for paths in reach.values()):
            self.aborted = True
            return
        if not self.in_set:
            return
        minor_neighbors = self._minor_neighbors(adjacency, dominators, reach)
        for other in sorted(minor_neighbors):
            a, b = (self.me, other) if self.me < other else (other, self.me)
            path = _lex_paths(adjacency, a, 2 * self.r + 1).get(b)
            if path is None:  # blocks touch, so trapped within 2r+1 steps
                raise ProtocolInvariantError(
                    f"minor neighbors {a},{b} have no local path of length "
                    f"<= {2 * self.r + 1}"
                )
            self._queue_halves(path)

    def _minor_neighbors(self, adjacency, dominators, reach) -> set[int]:
        def winner(w: int) -> int | None:
            best = None
            best_rank = None
            for d in dominators:
                path = reach[d].get(w)
                if path is None:
                    continue
                rank = (len(path), path)
                if best_rank is None or rank < best_rank:
                    best_rank = rank
                    best = d
            return best

        cache: dict[int, int | None] = {}

        def owner(w: int) -> int | None:
            if w not in cache:
                cache[w] = winner(w)
            return cache[w]

        out: set[int] = set()
        for x, y in self.known_edges:
            wx, wy = owner(x), owner(y)
            if wx == self.me and wy is not None and wy != self.me:
                out.add(wy)
            if wy == self.me and wx is not None and wx != self.me:
                out.add(wx)
        return out

    def _queue_halves(self, path: tuple[int, ...]) -> None:
        last = len(path) - 1
        if last < 2:
            return  # no interior vertices
        span = min(self.r, last - 1)
        if path[0] == self.me:
            self._notifications.append((0, 1, span - 1) + path)
        if path[last] == self.me:
            self._notifications.append((1, last - 1, span - 1) + path)


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _adjacency_of(edges: set[tuple[int, int]]) -> dict[int, list[int]]:
    adjacency: dict[int, list[int]] = {}
    for a, b in sorted(edges):
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    return adjacency


def _lex_paths(adjacency, source: int, max_len: int) -> dict[int, tuple[int, ...]]:
    """Lex-least shortest index paths within a knowledge graph."""
    best = {source: (source,)}
    frontier = [source]
    for _ in range(max_len):
        candidates: dict[int, tuple[int, ...]] = {}
        for u in frontier:
            base = best[u]
            for x in adjacency.get(u, ()):
                if x in best:
                    continue
                cand = base + (x,)
                cur = candidates.get(x)
                if cur is None or cand < cur:
                    candidates[x] = cand
        if not candidates:
            break
        best.update(candidates)
        frontier = list(candidates)
    return best


# ---------------------------------------------------------------------------
# order distribution (simulated phase)


class OrderDistProcess(VertexProcess):
    """Distribute the degeneracy-peeling order without central injection.

    Leader election by min-id flooding doubles as BFS-tree construction; the
    edge list streams up the tree one edge per round; the root peels the
    gathered graph exactly as the sequential heuristic does and floods the
    (vertex, super-id) assignments back, one per round, pipelined.  Rounds are
    O(n + m + diameter) on the input, which is linear on degenerate classes but
    far above the polylog round count a dedicated order subroutine achieves;
    this phase exists to make the
    order phase's cost measurable, not to minimize it.
    """

    def __init__(self, ctx: VertexContext, n_rounds_flood: int):
        self.me = ctx.vertex
        self.n = ctx.n
        self.flood_rounds = n_rounds_flood
        self.best = ctx.vertex
        self.parent: int | None = None
        self.neighbors_seen: set[int] = set()
        self.children: set[int] = set()
        self.children_done: set[int] = set()
        self.queue: list[tuple[int, int]] = []
        self.collected: set[tuple[int, int]] = set()
        self.done_sent = False
        self.is_root = False
        self.assignments: dict[int, int] = {}
        self.forward: list[tuple[int, int]] = []
        self.assign_cursor = 0
        self._improved = True

    def start(self):
        return Message("order_flood", [self.best])

    def step(self, round_no, inbox):
        if round_no <= self.flood_rounds:
            self._flood_step(inbox)
            if round_no < self.flood_rounds:
                return Message("order_flood", [self.best]) if self._improved else None
            # announce parents so everyone learns its children
            self.is_root = self.best == self.me
            announced = self.me if self.is_root else self.parent
            return Message("order_parent", [announced])
        if round_no == self.flood_rounds + 1:
            for sender, msg in inbox:
                if msg.kind == "order_parent" and msg.items[0] == self.me and sender != self.me:
                    self.children.add(sender)
            self._setup_stream()
            return self._stream_step()
        self._absorb_stream(inbox)
        return self._stream_step()

    def _flood_step(self, inbox) -> None:
        self._improved = False
        incoming = sorted(
            (item, sender)
            for sender, msg in inbox
            if msg.kind == "order_flood"
            for item in msg.items
        )
        if incoming:
            value, sender = incoming[0]
            if value < self.best:
                self.best = value
                self.parent = sender
                self._improved = True
        self.neighbors_seen.update(sender for _, sender in incoming)

    def _setup_stream(self) -> None:
        own = [
            _edge(self.me, u) for u in self.neighbors_seen if self.me < u
        ]
        if self.is_root:
            self.collected.update(own)
        else:
            self.queue.extend(sorted(own))

    def _absorb_stream(self, inbox) -> None:
        for sender, msg in inbox:
            if msg.kind == "order_item":
                for dest, a, b in msg.items:
                    if dest != self.me:
                        continue
                    if self.is_root:
                        self.collected.add((a, b))
                    else:
                        self.queue.append((a, b))
            elif msg.kind == "order_done":
                if msg.items[0] == self.me:
                    self.children_done.add(sender)
            elif msg.kind == "order_assign":
                for vertex, sid in msg.items:
                    if vertex not in self.assignments:
                        self.assignments[vertex] = sid
                        if not self.is_root:
                            self.forward.append((vertex, sid))

    def _stream_step(self):
        if self.is_root:
            if self.assign_cursor == 0:
                if self.children_done != self.children:
                    return None
                self._compute_order()
            if self.assign_cursor <= self.n:
                if self.assign_cursor == self.n:
                    self.output = self.assignments[self.me]
                    self.assign_cursor += 1
                    return None
                vertex = self.assign_cursor
                self.assign_cursor += 1
                return Message("order_assign", [(vertex, self.assignments[vertex])])
            return None
        if self.queue:
            a, b = self.queue.pop(0)
            return Message("order_item", [(self.parent, a, b)])
        if not self.done_sent and self.children_done == self.children:
            self.done_sent = True
            return Message("order_done", [self.parent])
        if self.forward:
            vertex, sid = self.forward.pop(0)
            out = Message("order_assign", [(vertex, sid)])
            if len(self.assignments) == self.n and not self.forward:
                self.output = self.assignments[self.me]
            return out
        if len(self.assignments) == self.n and self.output is None:
            self.output = self.assignments[self.me]
        return None

    def _compute_order(self) -> None:
        graph = build_graph(sorted(self.collected), vertices=range(self.n))
        sequence, _ = peeling_order(graph)
        self.assignments = {v: i for i, v in enumerate(sequence)}


# ---------------------------------------------------------------------------
# drivers


@dataclass
class ProtocolOutcome:
    """One protocol execution plus enough bookkeeping to compare with the
    sequential counterpart and to audit rounds and congestion."""

    graph: Graph
    r: int
    order: LinearOrder
    order_rounds: int
    order_trace: RoundTrace | None
    sim: SimResult
    outputs_by_vertex: dict
    extra: dict = field(default_factory=dict)

    @property
    def protocol_rounds(self) -> int:
        return self.sim.rounds

    @property
    def total_rounds(self) -> int:
        return self.order_rounds + self.sim.rounds


def _resolve_order(
    graph: Graph,
    order_radius: int,
    order: LinearOrder | None,
    order_source: str,
    model: SimModel,
    config: SimConfig,
) -> tuple[LinearOrder, int, RoundTrace | None]:
    if order_source == "injected":
        if order is None:
            order = heuristic_wcol_order(graph, order_radius)
        return order, config.order_phase_rounds, None
    if order_source == "simulated":
        if order is not None:
            raise ValueError("cannot both inject an order and simulate its distribution")
        distributed, rounds, trace = run_order_distribution(graph, model, config)
        return distributed, rounds, trace
    raise ValueError(f"unknown order_source {order_source!r}")


def run_order_distribution(
    graph: Graph, model: SimModel | None = None, config: SimConfig = DEFAULT_CONFIG
) -> tuple[LinearOrder, int, RoundTrace]:
    """Simulated order phase; returns (order, rounds, trace)."""
    if graph.n == 0:
        return LinearOrder(()), 0, RoundTrace()
    if not graph.is_connected():
        raise ValueError("simulated order distribution needs a connected graph")
    model = model or SimModel(CONGEST_BC, DEFAULT_CONFIG.kappa)
    n, m = graph.n, graph.edge_count()
    budget = 4 * n + 3 * m + 20
    sim = run(
        graph,
        model,
        lambda ctx: OrderDistProcess(ctx, n_rounds_flood=n),
        max_rounds=budget,
    )
    if not sim.terminated:
        raise ProtocolInvariantError("order distribution did not converge in budget")
    sequence = [0] * n
    for v, sid in enumerate(sim.outputs):
        sequence[sid] = v
    return LinearOrder(sequence), sim.rounds, sim.trace


def run_wreach_protocol(
    graph: Graph,
    r: int,
    model_kind: str = CONGEST_BC,
    config: SimConfig = DEFAULT_CONFIG,
    order: LinearOrder | None = None,
    order_source: str = "injected",
    step_order=None,
) -> ProtocolOutcome:
    """Distributed weak 2r-reachability; broadcast phase takes exactly 2r rounds."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    model = SimModel(model_kind, config.kappa)
    order, order_rounds, order_trace = _resolve_order(
        graph, 2 * r, order, order_source, model, config
    )
    k = 2 * r
    sim = run(
        graph,
        model,
        lambda ctx: WReachDistProcess(ctx, k, order.position(ctx.vertex)),
        max_rounds=k + 2,
        step_order=step_order,
    )
    outputs = {
        v: _paths_to_vertices(sim.outputs[v], order) for v in range(graph.n)
    }
    return ProtocolOutcome(graph, r, order, order_rounds, order_trace, sim, outputs)


def run_domset_protocol(
    graph: Graph,
    r: int,
    model_kind: str = CONGEST_BC,
    config: SimConfig = DEFAULT_CONFIG,
    order: LinearOrder | None = None,
    order_source: str = "injected",
    step_order=None,
) -> ProtocolOutcome:
    """Distributed dominating-set election (path phase + r token rounds)."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    model = SimModel(model_kind, config.kappa)
    order, order_rounds, order_trace = _resolve_order(
        graph, 2 * r, order, order_source, model, config
    )
    sim = run(
        graph,
        model,
        lambda ctx: DomSetDistProcess(ctx, r, order.position(ctx.vertex)),
        max_rounds=3 * r + 2,
        step_order=step_order,
    )
    outputs = {}
    members = set()
    for v in range(graph.n):
        out = sim.outputs[v]
        dominator = order.vertex_at(out["dominator"])
        outputs[v] = {"in_set": out["in_set"], "dominator": dominator}
        if out["in_set"]:
            members.add(v)
    c_measured = max(out["wreach_size"] for out in sim.outputs) if graph.n else 0
    return ProtocolOutcome(
        graph, r, order, order_rounds, order_trace, sim, outputs,
        extra={"members": frozenset(members), "max_wreach_size": c_measured},
    )


def run_cds_congest_protocol(
    graph: Graph,
    r: int,
    model_kind: str = CONGEST_BC,
    config: SimConfig = DEFAULT_CONFIG,
    order: LinearOrder | None = None,
    order_source: str = "injected",
    step_order=None,
) -> ProtocolOutcome:
    """Distributed connected dominating set under broadcast-CONGEST."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    model = SimModel(model_kind, config.kappa)
    order, order_rounds, order_trace = _resolve_order(
        graph, 2 * r + 1, order, order_source, model, config
    )
    sim = run(
        graph,
        model,
        lambda ctx: CdsCongestProcess(ctx, r, order.position(ctx.vertex)),
        max_rounds=5 * r + 3,
        step_order=step_order,
    )
    outputs = {}
    members = set()
    prime = set()
    for v in range(graph.n):
        out = sim.outputs[v]
        outputs[v] = {
            "in_set": out["in_set"],
            "in_prime": out["in_prime"],
            "dominator": order.vertex_at(out["dominator"]),
        }
        if out["in_set"]:
            members.add(v)
        if out["in_prime"]:
            prime.add(v)
    c_measured = max(out["wreach_size"] for out in sim.outputs) if graph.n else 0
    return ProtocolOutcome(
        graph, r, order, order_rounds, order_trace, sim, outputs,
        extra={
            "members": frozenset(members),
            "members_prime": frozenset(prime),
            "max_wreach_size": c_measured,
        },
    )


def run_cds_local_protocol(
    graph: Graph,
    r: int,
    dominators: frozenset[int] | set[int],
    config: SimConfig = DEFAULT_CONFIG,
    step_order=None,
) -> ProtocolOutcome:
    """LOCAL connected dominating set from injected flags; exactly 3r+1 rounds."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    dominators = frozenset(dominators)
    model = SimModel(LOCAL, config.kappa)
    sim = run(
        graph,
        model,
        lambda ctx: CdsLocalProcess(ctx, r, ctx.vertex in dominators),
        max_rounds=3 * r + 2,
        step_order=step_order,
    )
    aborted = [
        v for v in range(graph.n) if sim.outputs[v].get("status") == "abort_not_dominated"
    ]
    members = frozenset(
        v for v in range(graph.n) if sim.outputs[v].get("in_set")
    )
    outputs = {v: sim.outputs[v] for v in range(graph.n)}
    order = LinearOrder(range(graph.n))  # identity; the LOCAL variant is order-free
    return ProtocolOutcome(
        graph, r, order, 0, None, sim, outputs,
        extra={"members_prime": members, "aborted": aborted, "members": dominators},
    )


def _paths_to_vertices(paths_by_sid: dict[int, tuple[int, ...]], order: LinearOrder):
    at = order.vertex_at
    return {
        at(start): tuple(at(s) for s in path) for start, path in paths_by_sid.items()
    }


def congestion_bound_bits(c_measured: int, r: int, n: int, alpha: float) -> float:
    """Declared congestion envelope: alpha * c^2 * r * ceil(log2 n)."""
    return alpha * (c_measured ** 2) * r * id_width(n)
