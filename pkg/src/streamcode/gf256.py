"""GF(2^8) arithmetic on numpy uint8 arrays (primitive polynomial 0x11d)."""
from __future__ import annotations

import numpy as np

PRIM = 0x11D

EXP = np.zeros(512, dtype=np.uint8)
LOG = np.zeros(256, dtype=np.int32)
_x = 1
for _i in range(255):
    EXP[_i] = _x
    LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= PRIM
EXP[255:510] = EXP[:255]
del _x, _i

_a = np.arange(256)
MUL = np.where(
    (_a[:, None] == 0) | (_a[None, :] == 0),
    0,
    EXP[(LOG[_a][:, None] + LOG[_a][None, :]) % 255],
).astype(np.uint8)
INV = np.zeros(256, dtype=np.uint8)
INV[1:] = EXP[(255 - LOG[1:]) % 255]
del _a


class SingularMatrix(ArithmeticError):
    pass


def mul(a, b):
    return MUL[np.asarray(a, dtype=np.uint8), np.asarray(b, dtype=np.uint8)]


def inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(256)")
    return int(INV[a])


def matvec(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    """``M @ v`` over GF(256); ``v`` may be a vector or a matrix of columns."""
    M = np.asarray(M, dtype=np.uint8)
    v = np.asarray(v, dtype=np.uint8)
    if v.ndim == 1:
        return np.bitwise_xor.reduce(MUL[M, v[None, :]], axis=1).astype(np.uint8)
    prods = MUL[M[:, :, None], v[None, :, :]]
    return np.bitwise_xor.reduce(prods, axis=1).astype(np.uint8)


def _eliminate(A: np.ndarray, B: np.ndarray | None = None):
    """Gauss-Jordan on ``A`` (copied), applying the same row ops to ``B``.

    Returns ``(reduced A, transformed B, pivot columns)``.
    """
    A = np.array(A, dtype=np.uint8)
    B = None if B is None else np.array(B, dtype=np.uint8)
    rows, cols = A.shape
    pivots = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
            if B is not None:
                B[[r, p]] = B[[p, r]]
        f = INV[A[r, col]]
        A[r] = MUL[f, A[r]]
        if B is not None:
            B[r] = MUL[f, B[r]]
        for other in range(rows):
            if other != r and A[other, col]:
                g = A[other, col]
                A[other] ^= MUL[g, A[r]]
                if B is not None:
                    B[other] ^= MUL[g, B[r]]
        pivots.append(col)
        r += 1
    return A, B, pivots


def rank(A: np.ndarray) -> int:
    return len(_eliminate(A)[2])


def solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``A x = b`` for square nonsingular ``A``."""
    A = np.asarray(A, dtype=np.uint8)
    if A.shape[0] != A.shape[1]:
        raise ValueError("solve needs a square matrix")
    R, x, pivots = _eliminate(A, np.asarray(b, dtype=np.uint8))
    if len(pivots) < A.shape[0]:
        raise SingularMatrix(f"matrix has rank {len(pivots)} < {A.shape[0]}")
    return x


def cauchy_systematic(n_out: int, k: int) -> np.ndarray:
    """``n_out x k`` generator ``[I; C]`` whose every ``k``-row submatrix is invertible."""
    if n_out > 256:
        raise ValueError("Cauchy construction needs at most 256 distinct field elements")
    if k > n_out:
        raise ValueError("more message symbols than coded symbols")
    G = np.zeros((n_out, k), dtype=np.uint8)
    G[:k] = np.eye(k, dtype=np.uint8)
    xs = np.arange(k, n_out)
    ys = np.arange(k)
    G[k:] = INV[(xs[:, None] ^ ys[None, :]).astype(np.uint8)]
    return G
