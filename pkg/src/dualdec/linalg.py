"""Gaussian elimination over GF(2^m) (dense int arrays) and GF(2) (bitmasks)."""

from __future__ import annotations

import numpy as np

from .galois import Field


def row_reduce(field: Field, A, *, pivot_order=None):
    """Reduced row echelon form of ``A`` over ``field``.

    Columns are tried as pivots in ``pivot_order`` (default left to right).
    Returns ``(R, pivots)``; row ``t`` of ``R`` has a unit in column
    ``pivots[t]`` and zeros in every other pivot column.
    """
    R = np.array(A, dtype=np.int64, copy=True)
    rows, cols = R.shape
    order = range(cols) if pivot_order is None else pivot_order
    pivots = []
    r = 0
    for c in order:
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = field.vmul(R[r], field.inv(int(R[r, c])))
        col = R[:, c].copy()
        col[r] = 0
        for t in np.flatnonzero(col):
            R[t] ^= field.vmul(R[r], int(col[t]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(field: Field, A) -> int:
    return len(row_reduce(field, A)[1])


def nullspace(field: Field, A) -> np.ndarray:
    """Basis (as rows) of ``{x : A x = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    R, pivots = row_reduce(field, A)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for r, p in enumerate(pivots):
            # char 2: -R[r, f] == R[r, f]
            basis[t, p] = R[r, f]
    return basis


def gf2_info_set(col_masks, order, k):
    """Greedy choice of k linearly independent GF(2) columns.

    ``col_masks[j]`` is column j of a k-row matrix packed as an int.  Columns
    are scanned in ``order`` and kept when independent of those already kept.
    Returns the kept positions (possibly fewer than k when ``order`` is short
    or rank deficient).
    """
    basis = {}  # leading bit -> reduced vector
    chosen = []
    for j in order:
        v = col_masks[j]
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                chosen.append(j)
                break
            v ^= b
        if len(chosen) == k:
            break
    return chosen


def gf2_inverse(rows: list[int], k: int) -> list[int]:
    """Inverse of a k x k GF(2) matrix given as row bitmasks (bit c = column c)."""
    aug = [(r, 1 << i) for i, r in enumerate(rows)]
    for c in range(k):
        bit = 1 << c
        p = next((i for i in range(c, k) if aug[i][0] & bit), None)
        if p is None:
            raise np.linalg.LinAlgError("singular GF(2) matrix")
        aug[c], aug[p] = aug[p], aug[c]
        pr, pi = aug[c]
        for i in range(k):
            if i != c and aug[i][0] & bit:
                aug[i] = (aug[i][0] ^ pr, aug[i][1] ^ pi)
    return [inv for _, inv in aug]
