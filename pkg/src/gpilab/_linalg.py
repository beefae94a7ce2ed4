"""Exact linear algebra over the prime field F_p on int64 numpy arrays."""

from __future__ import annotations

import numpy as np


def inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, -1, p)
    return table


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M`` mod ``p`` and its pivot columns."""
    R = np.array(M, dtype=np.int64) % p
    inv = inverse_table(p)
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * inv[R[r, c]]) % p
        col = R[:, c].copy()
        col[r] = 0
        if col.any():
            R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : M v = 0} as rows, itself in reduced echelon form."""
    ncols = M.shape[1]
    R, pivots = rref(M, p) if M.shape[0] else (np.zeros((0, ncols), np.int64), [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-R[row, f]) % p
    if len(free) == 0:
        return basis
    return rref(basis, p)[0]


def solve(M: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``M v = b`` (free variables set to zero), or None."""
    ncols = M.shape[1]
    aug = np.concatenate([np.asarray(M, np.int64), np.asarray(b, np.int64).reshape(-1, 1)], axis=1)
    R, pivots = rref(aug, p)
    if ncols in pivots:
        return None
    v = np.zeros(ncols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        v[pc] = R[row, ncols]
    return v


def in_rowspace(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    if basis.shape[0] == 0:
        return not (np.asarray(v) % p).any()
    return rank(np.vstack([basis, v]), p) == rank(basis, p)


def batch_inverse(mats: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Invert a stack of square matrices mod ``p``.

    Returns ``(inverses, ok)``; rows with ``ok == False`` are singular and
    their entry in ``inverses`` is meaningless.
    """
    A = np.array(mats, dtype=np.int64) % p
    N, d, _ = A.shape
    inv = inverse_table(p)
    aug = np.concatenate([A, np.broadcast_to(np.eye(d, dtype=np.int64), (N, d, d))], axis=2).copy()
    ok = np.ones(N, dtype=bool)
    idx = np.arange(N)
    for c in range(d):
        sub = aug[:, c:, c]
        has = sub != 0
        ok &= has.any(axis=1)
        k = c + np.argmax(has, axis=1)
        rows_c = aug[idx, c].copy()
        aug[idx, c] = aug[idx, k]
        aug[idx, k] = rows_c
        piv = inv[aug[:, c, c]]
        aug[:, c] = (aug[:, c] * piv[:, None]) % p
        factors = aug[:, :, c].copy()
        factors[:, c] = 0
        aug = (aug - factors[:, :, None] * aug[:, c][:, None, :]) % p
    return aug[:, :, d:], ok
