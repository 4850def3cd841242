"""Byte-level codec realizing the even allocation.

Each packet carries ``L`` symbols (bytes). A message of ``m = rate * L``
symbols is expanded to ``c * L`` coded symbols, and those are laid out over
its coding window according to its per-step share. Any ``m`` surviving coded
symbols recover the message.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import gf256
from .allocation import AllocationTable, allocation_table
from .core import ParameterError, SystemParams, coding_window
from .erasure import ErasurePattern

MAX_MDS_LENGTH = 255
TRACE_MAGIC = b"SCTR"
TRACE_VERSION = 1


class DecodingError(Exception):
    pass


class InsufficientSymbols(DecodingError):
    def __init__(self, k: int, have: int, need: int):
        self.k = k
        self.have = have
        self.need = need
        super().__init__(f"message {k}: {have} coded symbols received, {need} needed (short by {need - have})")

    @property
    def deficit(self) -> int:
        return self.need - self.have


class RankDeficient(DecodingError):
    """Random linear fallback drew a singular set of received combinations."""


def base_symbol_count(params: SystemParams) -> int:
    """Smallest packet size turning every occurring share into whole symbols."""
    q = params.qd
    if params.divides:
        return q + 1  # only 1/(q+1) ever occurs
    return q * (q + 1)


def minimal_symbol_count(params: SystemParams, rate: Fraction) -> int:
    """Smallest packet size making every share and ``rate * L`` integral."""
    base = base_symbol_count(params)
    return base * rate.denominator // math.gcd(base, rate.denominator)


@dataclass(frozen=True)
class Segment:
    k: int
    start: int  # first codeword position carried
    payload: bytes

    @property
    def stop(self) -> int:
        return self.start + len(self.payload)


@dataclass(frozen=True)
class Packet:
    t: int
    segments: tuple[Segment, ...]
    size: int  # L

    @property
    def padding(self) -> int:
        return self.size - sum(len(s.payload) for s in self.segments)

    def to_bytes(self) -> bytes:
        head = [struct.pack(">IB", self.t, len(self.segments))]
        for s in self.segments:
            head.append(struct.pack(">IH", s.k, len(s.payload)))
        body = b"".join(s.payload for s in self.segments)
        return b"".join(head) + body + bytes(self.padding)


@dataclass
class CodecSchedule:
    params: SystemParams
    rate: Fraction
    L: int
    table: AllocationTable
    generator: np.ndarray = field(repr=False)
    kind: str  # "cauchy" or "random"
    seed: int = 0

    @property
    def m(self) -> int:
        return int(self.rate * self.L)

    @property
    def coded_length(self) -> int:
        return self.params.c * self.L

    def count(self, k: int, t: int) -> int:
        """Symbols of message ``k`` carried at step ``t``."""
        share = self.table.share(k, t)
        return int(share * self.L)

    def placement(self, k: int) -> list[tuple[int, int, int]]:
        """``(t, start, stop)`` codeword ranges of message ``k`` in window order."""
        out = []
        pos = 0
        for t in coding_window(self.params, k).steps:
            n = self.count(k, t)
            out.append((t, pos, pos + n))
            pos += n
        return out

    def received_symbols(self, k: int, erased: ErasurePattern) -> int:
        return sum(stop - start for t, start, stop in self.placement(k) if t not in erased)


def make_schedule(params: SystemParams, rate: Fraction | int | str, L: int | None = None,
                  seed: int = 0) -> CodecSchedule:
    rate = Fraction(rate)
    if rate <= 0 or rate > params.c:
        raise ParameterError(f"rate must lie in (0, c={params.c}], got {rate}")
    need = minimal_symbol_count(params, rate)
    if L is None:
        L = need
    elif L <= 0 or L % need:
        raise ParameterError(
            f"L={L} does not quantize shares and rate {rate} to whole symbols; "
            f"the minimal valid L is {need} (use a multiple of it)"
        )
    table = allocation_table(params)
    n_out = params.c * L
    k_in = int(rate * L)
    if n_out <= MAX_MDS_LENGTH:
        G, kind = gf256.cauchy_systematic(n_out, k_in), "cauchy"
    else:
        rng = np.random.default_rng(seed)
        G, kind = rng.integers(0, 256, size=(n_out, k_in), dtype=np.uint8), "random"
    return CodecSchedule(params, rate, L, table, G, kind, seed)


def encode(schedule: CodecSchedule, messages: Sequence[bytes]) -> list[Packet]:
    p = schedule.params
    if len(messages) != p.n:
        raise ParameterError(f"expected {p.n} messages, got {len(messages)}")
    codewords = {}
    for k, msg in enumerate(messages, start=1):
        if len(msg) != schedule.m:
            raise ParameterError(f"message {k} has {len(msg)} symbols, expected {schedule.m}")
        data = np.frombuffer(bytes(msg), dtype=np.uint8)
        codewords[k] = gf256.matvec(schedule.generator, data).tobytes()

    segments: dict[int, list[Segment]] = {t: [] for t in p.time_steps()}
    for k in range(1, p.n + 1):
        for t, start, stop in schedule.placement(k):
            segments[t].append(Segment(k, start, codewords[k][start:stop]))
    return [Packet(t, tuple(segments[t]), schedule.L) for t in p.time_steps()]


def erase(packets: Iterable[Packet], pattern: ErasurePattern) -> list[Packet]:
    return [pkt for pkt in packets if pkt.t not in pattern]


def decode(schedule: CodecSchedule, received: Iterable[Packet], k: int) -> bytes:
    """Recover message ``k`` from whatever packets of its window arrived."""
    window = coding_window(schedule.params, k)
    rows: list[int] = []
    values: list[int] = []
    for pkt in received:
        if pkt.t not in window:
            continue
        for seg in pkt.segments:
            if seg.k == k:
                rows.extend(range(seg.start, seg.stop))
                values.extend(seg.payload)
    m = schedule.m
    if len(rows) < m:
        raise InsufficientSymbols(k, len(rows), m)
    G = schedule.generator[rows]
    y = np.array(values, dtype=np.uint8)
    if schedule.kind == "cauchy":
        try:
            return gf256.solve(G[:m], y[:m]).tobytes()
        except gf256.SingularMatrix as exc:  # pragma: no cover - MDS guarantees invertibility
            raise DecodingError(str(exc)) from exc
    R, x, pivots = gf256._eliminate(G, y)
    if len(pivots) < m:
        raise RankDeficient(f"message {k}: received combinations have rank {len(pivots)} < {m}")
    return x[:m].tobytes()


def decodable_rate(pattern: ErasurePattern, table: AllocationTable, k: int) -> Fraction:
    """Bandwidth message ``k`` still receives once ``pattern`` is erased."""
    window = coding_window(table.params, k)
    return sum((table.share(k, t) for t in window.steps if t not in pattern), Fraction(0))


def parse_packet(buf: bytes, offset: int, L: int) -> tuple[tuple[int, list[tuple[int, bytes]]], int]:
    """Read one wire record; returns ``((t, [(k, payload), ...]), next offset)``."""
    try:
        t, nseg = struct.unpack_from(">IB", buf, offset)
        offset += 5
        heads = []
        for _ in range(nseg):
            heads.append(struct.unpack_from(">IH", buf, offset))
            offset += 6
    except struct.error:
        raise ValueError("truncated packet header") from None
    body = buf[offset:offset + L]
    if len(body) != L:
        raise ValueError(f"truncated packet at t={t}")
    offset += L
    segments = []
    pos = 0
    for k, n in heads:
        segments.append((k, body[pos:pos + n]))
        pos += n
    if pos > L:
        raise ValueError(f"packet at t={t} declares {pos} payload symbols, more than L={L}")
    return (t, segments), offset


def write_trace(packets: Sequence[Packet], L: int) -> bytes:
    head = TRACE_MAGIC + struct.pack(">BHI", TRACE_VERSION, L, len(packets))
    return head + b"".join(p.to_bytes() for p in packets)


def read_trace(buf: bytes, schedule: CodecSchedule) -> list[Packet]:
    """Parse a trace and restore codeword offsets from the schedule."""
    if buf[:4] != TRACE_MAGIC:
        raise ValueError("not a stream trace (bad magic)")
    version, L, count = struct.unpack_from(">BHI", buf, 4)
    if version != TRACE_VERSION:
        raise ValueError(f"unsupported trace version {version}")
    if L != schedule.L:
        raise ValueError(f"trace uses L={L} but the schedule has L={schedule.L}")
    offset = 11
    starts = {
        (k, t): start
        for k in range(1, schedule.params.n + 1)
        for t, start, _ in schedule.placement(k)
    }
    packets = []
    for _ in range(count):
        (t, raw), offset = parse_packet(buf, offset, L)
        segs = []
        for k, payload in raw:
            if (k, t) not in starts:
                raise ValueError(f"trace has a segment for message {k} at step {t}, outside its window")
            segs.append(Segment(k, starts[(k, t)], bytes(payload)))
        segs = tuple(segs)
        packets.append(Packet(t, segs, L))
    if offset != len(buf):
        raise ValueError("trailing bytes after last packet")
    return packets
