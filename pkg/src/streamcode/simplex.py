"""Dense tableau simplex over exact rationals.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0`` so the slack basis
is feasible from the start. Pivoting follows Bland's rule, which rules out
cycling on the degenerate rows that coverage constraints produce.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Unbounded(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence, max_pivots: int = 100_000) -> LPSolution:
    n = len(c)
    m = len(A)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be nonnegative (no phase one)")

    # rows: [A | I | b]; objective row holds reduced costs c_j - z_j
    width = n + m
    T = []
    for i, row in enumerate(A):
        r = [Fraction(v) for v in row] + [Fraction(0)] * m + [b[i]]
        r[n + i] = Fraction(1)
        T.append(r)
    obj = [Fraction(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))

    pivots = 0
    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded(f"objective unbounded along column {enter}")
        _pivot(T, obj, leave, enter)
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("simplex exceeded its pivot budget")

    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPSolution(-obj[-1], tuple(x[:n]), pivots)


def _pivot(T, obj, r, col):
    prow = T[r]
    f = prow[col]
    if f != 1:
        prow[:] = [v / f for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(T):
        if i != r:
            g = row[col]
            if g:
                for j in nz:
                    row[j] -= g * prow[j]
    g = obj[col]
    if g:
        for j in nz:
            obj[j] -= g * prow[j]
