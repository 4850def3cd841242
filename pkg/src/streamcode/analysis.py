"""Rate bounds, exhaustive verification and the finite-horizon LP optimum."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np

from . import gf256
from .allocation import allocation_table
from .core import ParameterError, SystemParams, achievable_rate, coding_window, y_vector
from .erasure import (
    ErasurePattern,
    Model,
    NotCovered,
    _Extender,
    burst_case,
    enumerate_admissible,
    is_admissible,
    resolve_guard,
    EnumerationGuardError,
    GUARD_ENV,
)
from .simplex import maximize

LP_CONSTRAINT_GUARD = 5000


def _frac(v: Fraction) -> str:
    return str(v)


@dataclass(frozen=True)
class BoundReport:
    params: SystemParams
    model: Model
    lower: Fraction
    upper: Fraction
    asymptotic: Fraction

    @property
    def gap(self) -> Fraction:
        return self.upper - self.lower

    def to_dict(self) -> dict:
        p = self.params
        return {
            "c": p.c, "d": p.d, "z": p.z, "n": p.n,
            "model": self.model.value,
            "lower": _frac(self.lower),
            "upper": _frac(self.upper),
            "asymptotic": _frac(self.asymptotic),
            "gap": _frac(self.gap),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundReport":
        report = cls(
            SystemParams(data["c"], data["d"], data["z"], data["n"]),
            Model(data["model"]),
            Fraction(data["lower"]),
            Fraction(data["upper"]),
            Fraction(data["asymptotic"]),
        )
        if "gap" in data and Fraction(data["gap"]) != report.gap:
            raise ValueError("gap does not equal upper - lower")
        return report


def cutset_upper_bound(pattern: ErasurePattern, params: SystemParams, model: Model | None = None) -> Fraction:
    """Unerased capacity per message, ``|T_n minus pattern| / n``."""
    if model is not None and not is_admissible(pattern, model, params):
        raise ParameterError(f"pattern {pattern.to_literal()!r} is not admissible under {model.value}")
    if pattern.erased and pattern.erased[-1] > params.horizon:
        raise ParameterError("pattern reaches past the horizon")
    return Fraction(params.horizon - len(pattern), params.n)


def _partition_bound(params: SystemParams) -> Fraction:
    # (1/n) * sum_{j <= d-z} (n y_j + 2)
    ys = y_vector(params)[: params.d - params.z]
    return sum((y + Fraction(2, params.n) for y in ys), Fraction(0))


def _periodic_bound(params: SystemParams) -> Fraction:
    c, d, z, n = params.c, params.d, params.z, params.n
    return Fraction(d - z, d) * (c + Fraction(2 * d - c, n))


def theorem_bounds(params: SystemParams, model: Model) -> BoundReport:
    """Lower (achieved) and finite-``n`` upper bounds on the optimal message size."""
    lower = achievable_rate(params)
    if model is Model.CODING_WINDOW:
        upper = _partition_bound(params)
    elif model is Model.SLIDING_WINDOW:
        upper = _periodic_bound(params) if params.divides else _partition_bound(params)
    elif model is Model.BURST:
        case = burst_case(params)
        upper = _periodic_bound(params) if case == 1 else _partition_bound(params)
    else:
        raise TypeError(f"not an erasure model: {model!r}")
    return BoundReport(params, model, lower, upper, lower)


@dataclass(frozen=True)
class Counterexample:
    pattern: ErasurePattern
    k: int
    received: Fraction


@dataclass(frozen=True)
class Verdict:
    params: SystemParams
    model: Model
    rate: Fraction
    patterns_checked: int
    counterexample: Counterexample | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> dict:
        p = self.params
        out = {
            "c": p.c, "d": p.d, "z": p.z, "n": p.n,
            "model": self.model.value,
            "rate": _frac(self.rate),
            "patterns_checked": self.patterns_checked,
            "ok": self.ok,
            "counterexample": None,
        }
        if self.counterexample is not None:
            ce = self.counterexample
            out["counterexample"] = {
                "pattern": list(ce.pattern.erased), "k": ce.k, "received": _frac(ce.received),
            }
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        ce = data.get("counterexample")
        return cls(
            SystemParams(data["c"], data["d"], data["z"], data["n"]),
            Model(data["model"]),
            Fraction(data["rate"]),
            data["patterns_checked"],
            None if ce is None else Counterexample(ErasurePattern(ce["pattern"]), ce["k"], Fraction(ce["received"])),
        )


def verify_construction(params: SystemParams, model: Model, rate: Fraction | None = None,
                        guard: int | None = None) -> Verdict:
    """Check every admissible pattern leaves each message at least ``rate`` of bandwidth.

    Patterns are visited in canonical (lexicographic) order and the first
    failing one is reported, with the smallest failing message index.
    """
    limit = resolve_guard(guard)
    if params.horizon > limit:
        raise EnumerationGuardError(
            f"horizon has {params.horizon} steps, above the enumeration guard {limit}; "
            f"pass a larger guard or set {GUARD_ENV}"
        )
    rate = achievable_rate(params) if rate is None else Fraction(rate)
    table = allocation_table(params)
    n, c = params.n, params.c
    scale = params.qd * (params.qd + 1)
    # integer shares: share * scale; a message fails once lost > c*scale - rate*scale
    slack = c * scale - rate * scale
    weights = [[]] + [
        [(k, int(table.share(k, t) * scale)) for k in table.at(t).real]
        for t in params.time_steps()
    ]
    lost = [0] * (n + 1)
    ext = _Extender(model, params)
    chosen: list[int] = []
    checked = 0
    horizon = params.horizon

    if slack < 0:
        return Verdict(params, model, rate, 1, Counterexample(ErasurePattern(), 1, Fraction(c)))

    def walk(start):
        nonlocal checked
        for t in range(start, horizon + 1):
            if not ext.can_add(t):
                continue
            state = ext.push(t)
            chosen.append(t)
            checked += 1
            bad = None
            for k, w in weights[t]:
                lost[k] += w
                if lost[k] > slack and (bad is None or k < bad):
                    bad = k
            if bad is not None:
                received = Fraction(c * scale - lost[bad], scale)
                result = Counterexample(ErasurePattern(chosen), bad, received)
            else:
                result = walk(t + 1)
            for k, w in weights[t]:
                lost[k] -= w
            chosen.pop()
            ext.pop(t, state)
            if result is not None:
                return result
        return None

    checked = 1  # the empty pattern
    ce = walk(1)
    return Verdict(params, model, rate, checked, ce)


# ---------------------------------------------------------------- LP oracle

@dataclass(frozen=True)
class LPResult:
    params: SystemParams
    model: Model
    rate: Fraction
    allocation: dict = field(repr=False)  # (k, t) -> Fraction
    constraints: int = 0

    def to_dict(self) -> dict:
        p = self.params
        return {
            "c": p.c, "d": p.d, "z": p.z, "n": p.n,
            "model": self.model.value,
            "rate": _frac(self.rate),
            "constraints": self.constraints,
            "allocation": [
                {"k": k, "t": t, "share": _frac(v)}
                for (k, t), v in sorted(self.allocation.items())
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LPResult":
        alloc = {(a["k"], a["t"]): Fraction(a["share"]) for a in data["allocation"]}
        return cls(
            SystemParams(data["c"], data["d"], data["z"], data["n"]),
            Model(data["model"]),
            Fraction(data["rate"]),
            alloc,
            data.get("constraints", 0),
        )


def maximal_window_erasures(params: SystemParams, model: Model, guard: int | None = None) -> dict[int, list[frozenset]]:
    """Per message, the inclusion-maximal sets ``E & W_k`` over admissible ``E``.

    A coverage constraint for a smaller set is implied by one for any
    superset, so only these are needed.
    """
    seen: dict[int, set[frozenset]] = {k: set() for k in range(1, params.n + 1)}
    windows = {k: coding_window(params, k) for k in seen}
    for pattern in enumerate_admissible(model, params, guard=guard):
        for k, w in windows.items():
            seen[k].add(frozenset(t for t in pattern.erased if t in w))
    out = {}
    for k, sets in seen.items():
        ordered = sorted(sets, key=lambda s: (-len(s), sorted(s)))
        keep: list[frozenset] = []
        for s in ordered:
            if not any(s < big for big in keep):
                keep.append(s)
        out[k] = sorted(keep, key=sorted)
    return out


def solve_intrasession_lp(params: SystemParams, model: Model, guard: int | None = None) -> LPResult:
    """Best message size any intrasession allocation achieves over the finite horizon.

    Variables are the per-(message, step) bandwidths inside each coding
    window plus the rate; the allocation must leave every message at least
    the rate under every admissible pattern.
    """
    cover = maximal_window_erasures(params, model, guard)
    var = {}
    for k in range(1, params.n + 1):
        for t in coding_window(params, k).steps:
            var[(k, t)] = len(var)
    s_idx = len(var)
    nvar = s_idx + 1

    A: list[list[int]] = []
    b: list[int] = []
    for t in params.time_steps():
        row = [0] * nvar
        for (k, tt), j in var.items():
            if tt == t:
                row[j] = 1
        A.append(row)
        b.append(1)
    for k, sets in cover.items():
        for erased in sets:
            row = [0] * nvar
            row[s_idx] = 1
            for t in coding_window(params, k).steps:
                if t not in erased:
                    row[var[(k, t)]] = -1
            A.append(row)
            b.append(0)
    if len(A) > LP_CONSTRAINT_GUARD:
        raise EnumerationGuardError(f"LP would have {len(A)} constraints, above {LP_CONSTRAINT_GUARD}")

    objective = [0] * nvar
    objective[s_idx] = 1
    sol = maximize(objective, A, b)
    alloc = {key: sol.x[j] for key, j in var.items()}
    return LPResult(params, model, sol.value, alloc, len(A))


# ------------------------------------------------- intersession reference

@dataclass(frozen=True)
class LinearStreamCode:
    """Linear code with one symbol per packet; ``rows[t-1]`` mixes messages into packet ``t``."""

    params: SystemParams
    rows: np.ndarray  # (horizon, n) over GF(256)

    def __post_init__(self):
        p = self.params
        if self.rows.shape != (p.horizon, p.n):
            raise ValueError("coefficient matrix must be horizon x n")
        for t in p.time_steps():
            for k in range(1, p.n + 1):
                if self.rows[t - 1, k - 1] and (k - 1) * p.c + 1 > t:
                    raise ValueError(f"packet {t} uses message {k} before it exists")

    def encode(self, messages) -> list[bytes]:
        data = np.array([np.frombuffer(bytes(m), dtype=np.uint8) for m in messages])
        return [gf256.matvec(self.rows[t][None, :], data)[0].tobytes() for t in range(self.params.horizon)]

    def decode(self, packets: dict[int, bytes], k: int) -> bytes | None:
        """Recover message ``k`` from packets that arrived by its deadline, or None."""
        deadline = coding_window(self.params, k).stop
        ts = sorted(t for t in packets if t <= deadline)
        if not ts:
            return None
        R = self.rows[[t - 1 for t in ts]]
        Y = np.array([np.frombuffer(packets[t], dtype=np.uint8) for t in ts])
        red, vals, pivots = gf256._eliminate(R, Y)
        for i, col in enumerate(pivots):
            if col == k - 1:
                row = red[i].copy()
                row[col] = 0
                if not row.any():
                    return vals[i].tobytes()
        return None

    def decodable(self, pattern: ErasurePattern, k: int) -> bool:
        deadline = coding_window(self.params, k).stop
        ts = [t for t in range(1, deadline + 1) if t not in pattern]
        if not ts:
            return False
        R = self.rows[[t - 1 for t in ts]]
        e = np.zeros((1, self.params.n), dtype=np.uint8)
        e[0, k - 1] = 1
        return gf256.rank(np.vstack([R, e])) == gf256.rank(R)


def intersession_reference_code() -> LinearStreamCode:
    """Unit-rate intersession code for ``(n, c, d, z) = (3, 1, 3, 1)``.

    Packets 1..5 carry ``M1, M1+M2, M2, M3, M3``. Message 1 survives any one
    loss among packets 1-3, message 2 is in packets 2 and 3 (after removing
    ``M1``), and message 3 is repeated in packets 4 and 5; no admissible
    pattern erases both copies a message depends on.
    """
    params = SystemParams(c=1, d=3, z=1, n=3)
    rows = np.array(
        [
            [1, 0, 0],
            [1, 1, 0],
            [0, 1, 0],
            [0, 0, 1],
            [0, 0, 1],
        ],
        dtype=np.uint8,
    )
    return LinearStreamCode(params, rows)


def verify_linear_code(code: LinearStreamCode, model: Model = Model.CODING_WINDOW) -> tuple[bool, int]:
    """Check every message is decodable under every admissible pattern.

    Returns ``(all decodable, number of patterns checked)``.
    """
    checked = 0
    for pattern in enumerate_admissible(model, code.params):
        checked += 1
        for k in range(1, code.params.n + 1):
            if not code.decodable(pattern, k):
                return False, checked
    return True, checked


def min_cutset_over_model(params: SystemParams, model: Model, guard: int | None = None) -> Fraction:
    """Tightest single-pattern cut-set bound: fewest unerased steps over admissible patterns."""
    most = max(len(p) for p in enumerate_admissible(model, params, guard=guard))
    return Fraction(params.horizon - most, params.n)


__all__ = [
    "BoundReport", "Counterexample", "LPResult", "LinearStreamCode", "NotCovered", "Verdict",
    "cutset_upper_bound", "intersession_reference_code", "maximal_window_erasures",
    "min_cutset_over_model", "solve_intrasession_lp", "theorem_bounds", "verify_construction",
    "verify_linear_code",
]
