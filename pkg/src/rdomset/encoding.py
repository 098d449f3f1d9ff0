"""Canonical bit encoding for protocol messages.

Layout (all fields MSB-first):

    header : 8-bit kind tag, 16-bit id count, 16-bit sequence count  (40 bits)
    ids    : each in a fixed w-bit field, w = max(1, ceil(log2 n))
    seqs   : each a (w+1)-bit length prefix followed by length w-bit fields

Bare integer items are ids and must lie in [0, n); sequence elements only need
to fit the field, i.e. lie in [0, 2^w).  The bit count returned is exact and is
what every bandwidth check measures.
"""

from __future__ import annotations

from typing import Iterable, Sequence

HEADER_BITS = 40
_MAX_COUNT = (1 << 16) - 1


def id_width(n: int) -> int:
    """Field width for vertex ids in an n-vertex network."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return max(1, (n - 1).bit_length())


def message_bits(items: Iterable[int | Sequence[int]], n: int) -> int:
    """Exact encoded size in bits, without materializing the bytes."""
    w = id_width(n)
    bits = HEADER_BITS
    for item in items:
        if isinstance(item, int):
            bits += w
        else:
            bits += (w + 1) + len(item) * w
    return bits


def encode_message(
    items: Sequence[int | Sequence[int]], n: int, kind: int = 0
) -> tuple[int, bytes]:
    """Encode a payload of ids and id sequences; returns (bitcount, bytes)."""
    w = id_width(n)
    ids = [item for item in items if isinstance(item, int)]
    seqs = [tuple(item) for item in items if not isinstance(item, int)]
    if not 0 <= kind < 256:
        raise ValueError(f"kind tag out of range: {kind}")
    if len(ids) > _MAX_COUNT or len(seqs) > _MAX_COUNT:
        raise ValueError("too many items for one message")
    writer = _BitWriter()
    writer.write(kind, 8)
    writer.write(len(ids), 16)
    writer.write(len(seqs), 16)
    for value in ids:
        if not 0 <= value < n:
            raise ValueError(f"id out of range [0,{n}): {value}")
        writer.write(value, w)
    max_field = 1 << w
    max_len = (1 << (w + 1)) - 1
    for seq in seqs:
        if len(seq) > max_len:
            raise ValueError(f"sequence too long for length prefix: {len(seq)}")
        writer.write(len(seq), w + 1)
        for value in seq:
            if not 0 <= value < max_field:
                raise ValueError(f"sequence element out of field range [0,{max_field}): {value}")
            writer.write(value, w)
    return writer.bit_count, writer.to_bytes()


def decode_message(data: bytes, bit_count: int, n: int) -> tuple[int, list[int], list[tuple[int, ...]]]:
    """Inverse of :func:`encode_message`; returns (kind, ids, sequences)."""
    w = id_width(n)
    reader = _BitReader(data, bit_count)
    kind = reader.read(8)
    n_ids = reader.read(16)
    n_seqs = reader.read(16)
    ids = [reader.read(w) for _ in range(n_ids)]
    seqs = []
    for _ in range(n_seqs):
        length = reader.read(w + 1)
        seqs.append(tuple(reader.read(w) for _ in range(length)))
    return kind, ids, seqs


class _BitWriter:
    def __init__(self):
        self._acc = 0
        self.bit_count = 0

    def write(self, value: int, width: int) -> None:
        self._acc = (self._acc << width) | (value & ((1 << width) - 1))
        self.bit_count += width

    def to_bytes(self) -> bytes:
        nbytes = (self.bit_count + 7) // 8
        pad = nbytes * 8 - self.bit_count
        return ((self._acc << pad)).to_bytes(nbytes, "big") if nbytes else b""


class _BitReader:
    def __init__(self, data: bytes, bit_count: int):
        self._value = int.from_bytes(data, "big") if data else 0
        nbytes = len(data)
        self._pos = nbytes * 8 - bit_count  # skip nothing: track from MSB side
        self._total = nbytes * 8
        self._cursor = 0
        self._bit_count = bit_count

    def read(self, width: int) -> int:
        if self._cursor + width > self._bit_count:
            raise ValueError("read past end of message")
        shift = self._total - self._cursor - width
        self._cursor += width
        return (self._value >> shift) & ((1 << width) - 1)
