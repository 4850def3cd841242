"""Even split of the link among active messages at every time step."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import ParameterError, SystemParams, coding_window, offset_qr


def active_messages(params: SystemParams, t: int) -> tuple[int, ...]:
    """All message indices whose window contains ``t``.

    Indices below 1 are dummy messages and indices above ``n`` are messages
    beyond the horizon; both are returned so that the share they hold stays
    visible.
    """
    if t < 1:
        raise ParameterError(f"time step must be >= 1, got {t}")
    ot = offset_qr(t, params.c)
    first = ot.q + 1 - params.qd
    if ot.r > params.rd:
        first += 1
    return tuple(range(first, ot.q + 2))


@dataclass(frozen=True)
class StepAllocation:
    t: int
    active: tuple[int, ...]
    share: Fraction
    n: int

    @property
    def real(self) -> tuple[int, ...]:
        return tuple(k for k in self.active if 1 <= k <= self.n)

    @property
    def unused(self) -> Fraction:
        """Bandwidth held by dummy or beyond-horizon messages."""
        return self.share * (len(self.active) - len(self.real))


@dataclass(frozen=True)
class AllocationTable:
    params: SystemParams
    steps: tuple[StepAllocation, ...]

    def at(self, t: int) -> StepAllocation:
        if not 1 <= t <= len(self.steps):
            raise ParameterError(f"time step {t} outside 1..{len(self.steps)}")
        return self.steps[t - 1]

    def share(self, k: int, t: int) -> Fraction:
        """Bandwidth given to message ``k`` at step ``t`` (0 if inactive)."""
        step = self.at(t)
        return step.share if k in step.active else Fraction(0)

    def to_dict(self) -> dict:
        p = self.params
        return {
            "c": p.c, "d": p.d, "z": p.z, "n": p.n,
            "steps": [
                {"t": s.t, "active": list(s.active), "share": str(s.share)}
                for s in self.steps
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AllocationTable":
        params = SystemParams(data["c"], data["d"], data["z"], data["n"])
        steps = tuple(
            StepAllocation(s["t"], tuple(s["active"]), Fraction(s["share"]), params.n)
            for s in data["steps"]
        )
        return cls(params, steps)


def allocation_table(params: SystemParams) -> AllocationTable:
    steps = []
    for t in params.time_steps():
        active = active_messages(params, t)
        steps.append(StepAllocation(t, active, Fraction(1, len(active)), params.n))
    return AllocationTable(params, tuple(steps))


def message_allocation_profile(table: AllocationTable, k: int) -> tuple[Fraction, ...]:
    """Shares ``x_1..x_d`` of message ``k`` at steps ``(k-1)c + i``."""
    window = coding_window(table.params, k)
    return tuple(table.share(k, t) for t in window.steps)
