"""Window geometry and exact arithmetic shared by the rest of the package.

Time steps and message indices are 1-based. Message ``k`` is created at
step ``(k-1)c + 1`` and must be decoded by step ``(k-1)c + d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction


class ParameterError(ValueError):
    """Raised for parameter tuples outside the supported domain."""


@dataclass(frozen=True)
class OffsetQR:
    q: int
    r: int


def offset_qr(a: int, b: int) -> OffsetQR:
    """Division ``a = q*b + r`` with the remainder taken in ``{1, ..., b}``.

    Unlike ``divmod`` the remainder is never 0: ``offset_qr(9, 3)`` gives
    ``q=2, r=3``.
    """
    if a <= 0 or b <= 0:
        raise ParameterError(f"offset_qr needs positive integers, got a={a}, b={b}")
    q, r = divmod(a - 1, b)
    return OffsetQR(q, r + 1)


@dataclass(frozen=True)
class SystemParams:
    """Streaming setup: creation interval ``c``, delay ``d``, budget ``z``, ``n`` messages."""

    c: int
    d: int
    z: int = 0
    n: int = 1

    def __post_init__(self):
        for name in ("c", "d", "z", "n"):
            if not isinstance(getattr(self, name), int):
                raise ParameterError(f"{name} must be an integer")
        if self.c < 1:
            raise ParameterError(f"c must be positive, got {self.c}")
        if self.d <= self.c:
            raise ParameterError(f"d must be greater than c (got c={self.c}, d={self.d})")
        if not 0 <= self.z < self.d:
            raise ParameterError(
                f"z must satisfy 0 <= z < d (got z={self.z}, d={self.d}); z = d leaves nothing to decode from"
            )
        if self.n < 1:
            raise ParameterError(f"n must be at least 1, got {self.n}")

    @cached_property
    def qd(self) -> int:
        return offset_qr(self.d, self.c).q

    @cached_property
    def rd(self) -> int:
        return offset_qr(self.d, self.c).r

    @property
    def horizon(self) -> int:
        """Last time step of ``T_n``, i.e. ``(n-1)c + d``."""
        return (self.n - 1) * self.c + self.d

    @property
    def divides(self) -> bool:
        """True when ``d`` is a multiple of ``c``."""
        return self.d % self.c == 0

    def time_steps(self) -> range:
        return range(1, self.horizon + 1)

    def with_(self, **changes) -> "SystemParams":
        fields = {"c": self.c, "d": self.d, "z": self.z, "n": self.n}
        fields.update(changes)
        return SystemParams(**fields)


@dataclass(frozen=True)
class CodingWindow:
    k: int
    start: int
    stop: int  # inclusive

    @property
    def steps(self) -> range:
        return range(self.start, self.stop + 1)

    def __contains__(self, t: int) -> bool:
        return self.start <= t <= self.stop

    def __len__(self) -> int:
        return self.stop - self.start + 1


def coding_window(params: SystemParams, k: int) -> CodingWindow:
    if not 1 <= k <= params.n:
        raise ParameterError(f"message index {k} outside 1..{params.n}")
    start = (k - 1) * params.c + 1
    return CodingWindow(k, start, start + params.d - 1)


def y_vector(params: SystemParams) -> tuple[Fraction, ...]:
    """Ascending per-step shares one message receives over its window.

    ``(q+1)*r`` entries of ``1/(q+1)`` followed by ``q*(c-r)`` entries of
    ``1/q`` with ``q, r`` the offset quotient and remainder of ``d`` by ``c``.
    """
    q, r = params.qd, params.rd
    small = [Fraction(1, q + 1)] * ((q + 1) * r)
    large = [Fraction(1, q)] * (q * (params.c - r))
    return tuple(small + large)


def achievable_rate(params: SystemParams) -> Fraction:
    """Message size the even-split construction supports with ``z`` erasures per window."""
    return sum(y_vector(params)[: params.d - params.z], Fraction(0))
