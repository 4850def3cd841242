"""Erasure patterns and the three adversarial erasure models.

A pattern is a set of erased time steps inside the horizon ``1..(n-1)c+d``.
The models bound erasures per coding window, per sliding window of ``d``
steps, or restrict them to bursts of at most ``z`` steps spaced at least
``d - z`` apart.
"""
from __future__ import annotations

import enum
import os
from typing import Iterable, Iterator

from .core import ParameterError, SystemParams

GUARD_ENV = "STREAMCODE_GUARD"
DEFAULT_GUARD = 24
HARD_GUARD = 30


class ErasurePattern:
    """Immutable set of erased time steps, kept sorted."""

    __slots__ = ("erased",)

    def __init__(self, steps: Iterable[int] = ()):
        erased = tuple(sorted(set(int(t) for t in steps)))
        if erased and erased[0] < 1:
            raise ParameterError(f"time steps start at 1, got {erased[0]}")
        object.__setattr__(self, "erased", erased)

    def __setattr__(self, name, value):
        raise AttributeError("ErasurePattern is immutable")

    def __iter__(self) -> Iterator[int]:
        return iter(self.erased)

    def __len__(self) -> int:
        return len(self.erased)

    def __contains__(self, t: int) -> bool:
        return t in self._set()

    def _set(self) -> frozenset:
        return frozenset(self.erased)

    def __eq__(self, other):
        if isinstance(other, ErasurePattern):
            return self.erased == other.erased
        return NotImplemented

    def __hash__(self):
        return hash(self.erased)

    def __lt__(self, other: "ErasurePattern") -> bool:
        return self.erased < other.erased

    def __repr__(self):
        return f"ErasurePattern({list(self.erased)})"

    def __or__(self, other: "ErasurePattern") -> "ErasurePattern":
        return ErasurePattern(self.erased + other.erased)

    def __and__(self, steps) -> "ErasurePattern":
        keep = set(steps)
        return ErasurePattern(t for t in self.erased if t in keep)

    def count_in(self, start: int, stop: int) -> int:
        """Erasures in the inclusive interval ``start..stop``."""
        return sum(1 for t in self.erased if start <= t <= stop)

    def runs(self) -> list[tuple[int, int]]:
        """Maximal runs of consecutive erased steps as ``(first, last)``."""
        out: list[tuple[int, int]] = []
        for t in self.erased:
            if out and out[-1][1] == t - 1:
                out[-1] = (out[-1][0], t)
            else:
                out.append((t, t))
        return out

    def to_literal(self) -> str:
        return ",".join(str(t) for t in self.erased)

    @classmethod
    def parse(cls, text: str) -> "ErasurePattern":
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls(int(tok) for tok in text.split(","))
        except ValueError:
            raise ParameterError(f"bad pattern literal {text!r}; expected e.g. '1,4,9'") from None


class Model(enum.Enum):
    CODING_WINDOW = "cw"
    SLIDING_WINDOW = "sw"
    BURST = "burst"

    @classmethod
    def parse(cls, name: str) -> "Model":
        aliases = {
            "cw": cls.CODING_WINDOW, "coding_window": cls.CODING_WINDOW, "codingwindow": cls.CODING_WINDOW,
            "sw": cls.SLIDING_WINDOW, "sliding_window": cls.SLIDING_WINDOW, "slidingwindow": cls.SLIDING_WINDOW,
            "b": cls.BURST, "burst": cls.BURST,
        }
        try:
            return aliases[name.lower().replace("-", "_")]
        except KeyError:
            raise ParameterError(f"unknown erasure model {name!r}") from None


def _check_inside(pattern: ErasurePattern, params: SystemParams):
    if pattern.erased and pattern.erased[-1] > params.horizon:
        raise ParameterError(f"pattern step {pattern.erased[-1]} is past the horizon {params.horizon}")


def is_admissible(pattern: ErasurePattern, model: Model, params: SystemParams) -> bool:
    _check_inside(pattern, params)
    z, c, d = params.z, params.c, params.d
    if model is Model.CODING_WINDOW:
        return all(
            pattern.count_in((k - 1) * c + 1, (k - 1) * c + d) <= z
            for k in range(1, params.n + 1)
        )
    if model is Model.SLIDING_WINDOW:
        return all(
            pattern.count_in(t, t + d - 1) <= z
            for t in range(1, (params.n - 1) * c + 2)
        )
    if model is Model.BURST:
        runs = pattern.runs()
        if any(last - first + 1 > z for first, last in runs):
            return False
        return all(nxt[0] - prev[1] - 1 >= d - z for prev, nxt in zip(runs, runs[1:]))
    raise TypeError(f"not an erasure model: {model!r}")


def burst_admissible_implications(pattern: ErasurePattern, params: SystemParams, first_t: int = 0) -> bool:
    """Burst model written as the two step-wise implications.

    For each ``t >= first_t``: an erasure at ``t`` followed by a reception at
    ``t+1`` forbids erasures in ``t+1..t+d-z``; a reception at ``t`` followed
    by an erasure at ``t+1`` allows at most ``z`` erasures in ``t+1..t+z+1``.
    With ``first_t = 0`` this agrees with :func:`is_admissible`; with
    ``first_t = 1`` a run starting at step 1 escapes the length check.
    """
    d, z = params.d, params.z
    erased = set(pattern.erased)
    for t in range(first_t, params.horizon + 1):
        here, nxt = t in erased, (t + 1) in erased
        if here and not nxt:
            if any(u in erased for u in range(t + 1, t + d - z + 1)):
                return False
        elif not here and nxt:
            if sum(1 for u in range(t + 1, t + z + 2) if u in erased) > z:
                return False
    return True


def resolve_guard(guard: int | None = None) -> int:
    if guard is not None:
        return guard
    env = os.environ.get(GUARD_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParameterError(f"{GUARD_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_GUARD


class EnumerationGuardError(ParameterError):
    pass


class _Extender:
    """Incremental admissibility for patterns grown in ascending order.

    Every model is prefix-closed under this growth order: once a prefix
    violates the model, no extension with later steps can repair it.
    """

    def __init__(self, model: Model, params: SystemParams):
        self.model = model
        self.p = params
        if model is Model.CODING_WINDOW:
            self.counts = [0] * (params.n + 1)
        elif model is Model.SLIDING_WINDOW:
            self.counts = [0] * ((params.n - 1) * params.c + 2)
        self.run = 0
        self.last = None

    def _windows(self, t: int) -> range:
        p = self.p
        if self.model is Model.CODING_WINDOW:
            # k with (k-1)c+1 <= t <= (k-1)c+d
            lo = max(1, -(-(t - p.d) // p.c) + 1)
            hi = min(p.n, (t - 1) // p.c + 1)
            return range(lo, hi + 1)
        lo = max(1, t - p.d + 1)
        hi = min((p.n - 1) * p.c + 1, t)
        return range(lo, hi + 1)

    def can_add(self, t: int) -> bool:
        z = self.p.z
        if self.model is Model.BURST:
            if z == 0:
                return False
            if self.last is None:
                return True
            if t == self.last + 1:
                return self.run + 1 <= z
            return t - self.last - 1 >= self.p.d - z
        return all(self.counts[w] < z for w in self._windows(t))

    def push(self, t: int):
        state = (self.last, self.run)
        if self.model is Model.BURST:
            self.run = self.run + 1 if self.last is not None and t == self.last + 1 else 1
        else:
            for w in self._windows(t):
                self.counts[w] += 1
        self.last = t
        return state

    def pop(self, t: int, state):
        if self.model is not Model.BURST:
            for w in self._windows(t):
                self.counts[w] -= 1
        self.last, self.run = state


class PatternStream:
    """Iterator over admissible patterns in lexicographic order of their sorted steps.

    ``truncated`` becomes True if iteration stopped because ``cap`` patterns
    were produced while more remained.
    """

    def __init__(self, model: Model, params: SystemParams, cap: int | None = None, guard: int | None = None):
        limit = resolve_guard(guard)
        if params.horizon > limit:
            raise EnumerationGuardError(
                f"horizon has {params.horizon} steps, above the enumeration guard {limit}; "
                f"pass a larger guard or set {GUARD_ENV}"
            )
        self.model = model
        self.params = params
        self.cap = cap
        self.truncated = False
        self.produced = 0
        self._it = self._generate()

    def __iter__(self):
        return self

    def __next__(self) -> ErasurePattern:
        return next(self._it)

    def _generate(self) -> Iterator[ErasurePattern]:
        horizon = self.params.horizon
        ext = _Extender(self.model, self.params)
        chosen: list[int] = []

        def walk(start: int):
            yield tuple(chosen)
            for t in range(start, horizon + 1):
                if ext.can_add(t):
                    state = ext.push(t)
                    chosen.append(t)
                    yield from walk(t + 1)
                    chosen.pop()
                    ext.pop(t, state)

        for steps in walk(1):
            if self.cap is not None and self.produced >= self.cap:
                self.truncated = True
                return
            self.produced += 1
            yield ErasurePattern(steps)


def enumerate_admissible(model: Model, params: SystemParams, cap: int | None = None,
                         guard: int | None = None) -> PatternStream:
    return PatternStream(model, params, cap=cap, guard=guard)


def periodic_pattern(params: SystemParams) -> ErasurePattern:
    """``z`` erased steps then ``d - z`` received steps, repeated from step 1."""
    return ErasurePattern(
        t for t in params.time_steps() if (t - 1) % params.d < params.z
    )


class NotCovered(ParameterError):
    """Parameters fall in the burst regime where no worst case is known."""


def burst_case(params: SystemParams) -> int:
    """Which burst-optimality case applies: 1, 2 or 3. Raises :class:`NotCovered` otherwise."""
    if params.divides:
        return 1
    if params.z <= params.c - params.rd:
        return 2
    if params.z >= params.qd * params.c:
        return 3
    raise NotCovered(
        f"burst length z={params.z} lies strictly between c - r = {params.c - params.rd} "
        f"and q*c = {params.qd * params.c}; no intrasession optimality result covers it"
    )


def burst_closed_form(params: SystemParams) -> ErasurePattern:
    """Closed form of the worst-case base pattern when ``c`` does not divide ``d``."""
    c, q, z = params.c, params.qd, params.z
    case = burst_case(params)
    steps = params.time_steps()
    if case == 2:
        # runs of z erasures ending each block of q*c steps
        return ErasurePattern(
            t for t in steps
            if (t - 1) // c % q == q - 1 and (t - 1) % c + 1 >= c - z + 1
        )
    if case == 3:
        # d - z received steps at the start of each block of (q+1)c steps
        return ErasurePattern(
            t for t in steps
            if not ((t - 1) // c % (q + 1) == 0 and (t - 1) % c + 1 <= params.d - z)
        )
    raise ParameterError("closed form applies only when c does not divide d")


def burst_worst_case(params: SystemParams) -> ErasurePattern:
    """Worst-case base pattern for the burst model (``c`` must not divide ``d``)."""
    from .partition import worst_case_base_pattern

    if params.divides:
        raise ParameterError("d is a multiple of c; use periodic_pattern for the burst worst case")
    burst_case(params)
    return worst_case_base_pattern(params)
