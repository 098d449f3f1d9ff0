"""Deterministic synchronous round engine.

One round = collect what every vertex wants to send, validate each message
against the communication model, deliver along edges, then step every vertex
on its inbox.  A message handed out in round t is therefore read by the
neighbors in round t; identical inputs give byte-identical traces, and the
stepping order is irrelevant (asserted by tests), only fixed for
reproducibility.

Models: LOCAL (unbounded messages), CONGEST (per-neighbor messages up to the
cap), CONGEST_BC (one broadcast per vertex per round, up to the cap).  The cap
is kappa words of ceil(log2 n) bits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .encoding import id_width, message_bits

LOCAL = "local"
CONGEST = "congest"
CONGEST_BC = "congest_bc"
MODEL_KINDS = (LOCAL, CONGEST, CONGEST_BC)

# kind tags for the canonical encoding; order is part of the wire format
MESSAGE_KINDS = (
    "echo",
    "flood",
    "paths",
    "elect",
    "notify",
    "know",
    "half_notify",
    "order_flood",
    "order_parent",
    "order_item",
    "order_done",
    "order_assign",
    "blast",
)


@dataclass(frozen=True)
class SimConfig:
    """Model parameters exposed as knobs.

    ``kappa``: bandwidth cap in id-words per message for the CONGEST models.
    ``alpha``: declared constant for the congestion accounting assertion
    (measured max round bits <= alpha * c^2 * r * ceil(log2 n)).
    ``order_phase_rounds``: modeled round cost charged for an injected order.
    """

    kappa: int = 64
    alpha: float = 8.0
    order_phase_rounds: int = 0


DEFAULT_CONFIG = SimConfig()


@dataclass(frozen=True)
class SimModel:
    kind: str
    kappa: int = DEFAULT_CONFIG.kappa

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model {self.kind!r}; known: {MODEL_KINDS}")

    def bandwidth_bits(self, n: int) -> int | None:
        if self.kind == LOCAL:
            return None
        return self.kappa * id_width(n)


class Message:
    """Payload carried between vertices: a kind tag plus ids and id sequences."""

    __slots__ = ("kind", "items")

    def __init__(self, kind: str, items: Sequence[int | tuple[int, ...]]):
        if kind not in MESSAGE_KINDS:
            raise ValueError(f"unregistered message kind {kind!r}")
        self.kind = kind
        self.items = tuple(
            item if isinstance(item, int) else tuple(item) for item in items
        )

    def bits(self, n: int) -> int:
        return message_bits(self.items, n)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Message({self.kind!r}, {self.items!r})"


# An outbox is None (silence), a Message (broadcast to all neighbors), or a
# dict neighbor -> Message (addressed sends; not allowed under broadcast-CONGEST).


@dataclass(frozen=True)
class VertexContext:
    vertex: int
    n: int
    degree: int


class VertexProcess:
    """One vertex of a protocol.

    ``start`` returns the outbox for round 1; ``step`` consumes the round's
    inbox (a list of (sender, message), sorted by sender) and returns the
    outbox for the next round.  Assign ``output`` exactly once; the run ends
    when every vertex has output.
    """

    output: object = None

    def start(self):
        return None

    def step(self, round_no: int, inbox: list):
        raise NotImplementedError


class BandwidthViolation(RuntimeError):
    """A message broke the model's size or shape constraints."""

    def __init__(self, vertex: int, round_no: int, bits: int, cap: int, detail: str = ""):
        msg = f"vertex {vertex} round {round_no}: message of {bits} bits exceeds cap {cap}"
        if detail:
            msg = f"vertex {vertex} round {round_no}: {detail}"
        super().__init__(msg)
        self.vertex = vertex
        self.round_no = round_no
        self.bits = bits
        self.cap = cap


@dataclass
class RoundRecord:
    round_no: int
    messages: int
    max_bits: int
    total_bits: int

    def to_json_dict(self) -> dict:
        return {
            "round": self.round_no,
            "messages": self.messages,
            "max_bits": self.max_bits,
            "total_bits": self.total_bits,
        }


@dataclass
class RoundTrace:
    records: list[RoundRecord] = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return len(self.records)

    @property
    def max_bits(self) -> int:
        return max((rec.max_bits for rec in self.records), default=0)

    @property
    def total_messages(self) -> int:
        return sum(rec.messages for rec in self.records)

    def to_jsonl(self) -> str:
        return "\n".join(
            json.dumps(rec.to_json_dict(), sort_keys=True) for rec in self.records
        ) + ("\n" if self.records else "")


@dataclass
class SimResult:
    outputs: list
    rounds: int
    trace: RoundTrace
    terminated: bool

    def outputs_json(self, graph) -> str:
        mapping = {
            str(graph.external_id(v)): self.outputs[v] for v in range(len(self.outputs))
        }
        return json.dumps(mapping, sort_keys=True, default=_json_fallback)


def _json_fallback(value):
    if isinstance(value, frozenset):
        return sorted(value)
    raise TypeError(f"not JSON serializable: {type(value)}")


def run(
    graph,
    model: SimModel,
    protocol_factory: Callable[[VertexContext], VertexProcess],
    max_rounds: int,
    step_order: Sequence[int] | None = None,
) -> SimResult:
    """Execute a protocol until every vertex has output or max_rounds elapse.

    ``step_order`` permutes the per-round stepping order; synchronous semantics
    make the result independent of it, which the test suite asserts by
    shuffling.
    """
    if max_rounds < 0:
        raise ValueError("max_rounds must be >= 0")
    n = graph.n
    procs = [
        protocol_factory(VertexContext(vertex=v, n=n, degree=graph.degree(v)))
        for v in range(n)
    ]
    order = list(step_order) if step_order is not None else list(range(n))
    if sorted(order) != list(range(n)):
        raise ValueError("step_order must be a permutation of the vertices")
    cap = model.bandwidth_bits(n) if n else None
    trace = RoundTrace()

    pending: list = [procs[v].start() for v in range(n)]
    round_no = 0
    while round_no < max_rounds:
        if all(p.output is not None for p in procs):
            break
        round_no += 1
        inboxes: list[list] = [[] for _ in range(n)]
        messages = 0
        max_bits = 0
        total_bits = 0
        for v in range(n):
            outbox = pending[v]
            if outbox is None:
                continue
            for dest, message in _validated(outbox, model, graph, v, round_no, cap):
                inboxes[dest].append((v, message))
                messages += 1
                bits = message.bits(n)
                max_bits = max(max_bits, bits)
                total_bits += bits
        trace.records.append(RoundRecord(round_no, messages, max_bits, total_bits))
        new_pending: list = [None] * n
        for v in order:
            inbox = sorted(inboxes[v], key=lambda sm: sm[0])
            before = procs[v].output
            new_pending[v] = procs[v].step(round_no, inbox)
            if before is not None and procs[v].output != before:
                raise RuntimeError(
                    f"vertex {v} changed its output in round {round_no}; outputs are final"
                )
        pending = new_pending

    done = all(p.output is not None for p in procs)
    return SimResult(
        outputs=[p.output for p in procs],
        rounds=round_no,
        trace=trace,
        terminated=done,
    )


def _validated(outbox, model: SimModel, graph, sender: int, round_no: int, cap):
    """Yield (dest, message) pairs after model checks."""
    neighbors = graph.neighbors(sender)
    if isinstance(outbox, Message):
        _check_cap(outbox, model, graph.n, sender, round_no, cap)
        for dest in neighbors:
            yield dest, outbox
        return
    if isinstance(outbox, dict):
        if model.kind == CONGEST_BC:
            raise BandwidthViolation(
                sender, round_no, 0, cap or 0,
                detail="addressed messages are not allowed under broadcast-CONGEST",
            )
        for dest, message in sorted(outbox.items()):
            if dest not in neighbors:
                raise ValueError(f"vertex {sender} addressed non-neighbor {dest}")
            _check_cap(message, model, graph.n, sender, round_no, cap)
            yield dest, message
        return
    raise TypeError(f"bad outbox from vertex {sender}: {outbox!r}")


def _check_cap(message: Message, model: SimModel, n: int, sender: int, round_no: int, cap):
    if cap is None:
        return
    bits = message.bits(n)
    if bits > cap:
        raise BandwidthViolation(sender, round_no, bits, cap)
