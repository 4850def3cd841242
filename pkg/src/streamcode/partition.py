"""Partition of the horizon into ``d`` classes meeting every window exactly once.

Class ``i`` collects the steps where each message receives the same share
as at offset ``i`` of its own window. Erasing whole classes is how the
worst-case patterns are built.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import ParameterError, SystemParams, coding_window, offset_qr
from .erasure import ErasurePattern


def partition_index(params: SystemParams, t: int) -> int:
    """Class ``i`` in ``1..d`` that time step ``t`` belongs to."""
    ot = offset_qr(t, params.c)
    period = params.qd + 1 if ot.r <= params.rd else params.qd
    return (ot.q % period) * params.c + ot.r


def is_small_share(params: SystemParams, i: int) -> bool:
    """True for classes whose steps carry ``1/(q+1)`` per message (the smaller share)."""
    return offset_qr(i, params.c).r <= params.rd


@dataclass(frozen=True)
class Partition:
    params: SystemParams
    sets: tuple[tuple[int, ...], ...]  # sets[i-1] is class i, ascending

    def __getitem__(self, i: int) -> tuple[int, ...]:
        if not 1 <= i <= self.params.d:
            raise ParameterError(f"partition class {i} outside 1..{self.params.d}")
        return self.sets[i - 1]

    def index_of(self, t: int) -> int:
        return partition_index(self.params, t)

    def union(self, indices) -> ErasurePattern:
        steps: set[int] = set()
        for i in indices:
            steps.update(self[i])
        return ErasurePattern(steps)

    def to_dict(self) -> dict:
        p = self.params
        return {
            "c": p.c, "d": p.d, "z": p.z, "n": p.n,
            "sets": [list(s) for s in self.sets],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Partition":
        params = SystemParams(data["c"], data["d"], data["z"], data["n"])
        return cls(params, tuple(tuple(s) for s in data["sets"]))


def build_partition(params: SystemParams) -> Partition:
    buckets: list[list[int]] = [[] for _ in range(params.d)]
    for t in params.time_steps():
        buckets[partition_index(params, t) - 1].append(t)
    return Partition(params, tuple(tuple(b) for b in buckets))


def v_vector(params: SystemParams) -> tuple[int, ...]:
    """Class indices ordered small-share first, each group ascending."""
    small = [i for i in range(1, params.d + 1) if is_small_share(params, i)]
    large = [i for i in range(1, params.d + 1) if not is_small_share(params, i)]
    return tuple(small + large)


def worst_case_base_pattern(params: SystemParams, partition: Partition | None = None) -> ErasurePattern:
    """Erase the last ``z`` classes of the v-ordering.

    The result meets every coding window in exactly ``z`` steps, and those
    are the steps where the window's message holds its largest shares.
    """
    if not 0 <= params.z <= params.d - 1:
        raise ParameterError(f"z must lie in 0..{params.d - 1}, got {params.z}")
    if params.z == 0:
        return ErasurePattern()
    partition = partition or build_partition(params)
    return partition.union(v_vector(params)[params.d - params.z:])


def derived_window_patterns(base: ErasurePattern, params: SystemParams) -> list[ErasurePattern]:
    """``base`` restricted to each coding window, one pattern per message."""
    if base.erased and max(base.erased) > params.horizon:
        raise ParameterError("pattern reaches past the horizon")
    out = []
    for k in range(1, params.n + 1):
        w = coding_window(params, k)
        out.append(ErasurePattern(t for t in base.erased if t in w))
    return out
