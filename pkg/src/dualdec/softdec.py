"""Soft-decision decoding for BPSK over AWGN (0 -> +1, 1 -> -1).

Every check through position j is scored by the min-magnitude rule over its
other positions, divided by |y_j|, and the scores add up to the extrinsic
sum phi_j.  Negative phi_j means the checks contradict the current hard
decision at j.

By default a check's score carries the sign of the product over *all* of its
positions, so that with unit magnitudes phi_j reduces to the bit-flip
measure Delta_j.  ``literal=True`` uses only the sign of the other positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .codebook import CodeSpec
from .cyclicring import CyclicPoly
from .dualmine import DualCheckSet
from .harddec import (
    DecodeReport,
    Status,
    check_support,
    decode_info_set,
    engine_for,
)

__all__ = [
    "EPS",
    "SoftVector",
    "decode_soft_flip",
    "decode_soft_infoset",
    "rho",
    "soft_flip_batch",
    "varphi",
    "varphi_batch",
]

EPS = 1e-12


@dataclass(frozen=True)
class SoftVector:
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))

    @property
    def hard(self) -> np.ndarray:
        return (self.y < 0).astype(np.uint8)

    @property
    def magnitude(self) -> np.ndarray:
        return np.maximum(np.abs(self.y), EPS)

    @property
    def sign(self) -> np.ndarray:
        return np.where(self.y < 0, -1.0, 1.0)

    def __len__(self):
        return len(self.y)


def _soft(y) -> SoftVector:
    return y if isinstance(y, SoftVector) else SoftVector(y)


def rho(y, j: int, l: int, i: int, checks: DualCheckSet, literal: bool = False) -> float:
    """Reliability of check P(j, l, i) about position j."""
    y = _soft(y)
    supp = check_support(j, l, i, checks)
    others = [t for t in supp if t != j]
    mag, sg = y.magnitude, y.sign
    ext_sign = float(np.prod(sg[others]))
    if not literal:
        ext_sign *= sg[j]
    return ext_sign * float(np.min(mag[others])) / mag[j]


class _SoftTables:
    def __init__(self, checks: DualCheckSet):
        eng = engine_for(checks)
        self.eng = eng
        self.idx = eng.syn_idx  # (L, d, n): member l of check instance s

    @cached_property
    def scatter(self) -> np.ndarray:
        """(L*d*n, n) 0/1 matrix adding member scores onto their positions."""
        L, d, n = self.idx.shape
        M = np.zeros((L * d * n, n), dtype=np.float32)
        M[np.arange(L * d * n), self.idx.ravel()] = 1.0
        return M


_TABLES: dict[int, _SoftTables] = {}


def _tables(checks: DualCheckSet) -> _SoftTables:
    t = _TABLES.get(id(checks))
    if t is None or t.eng.checks is not checks:
        t = _SoftTables(checks)
        _TABLES[id(checks)] = t
    return t


def varphi_batch(Y, checks: DualCheckSet, literal: bool = False, chunk: int = 256) -> np.ndarray:
    """phi for a batch of received vectors, shape (B, n)."""
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    tab = _tables(checks)
    idx = tab.idx
    L, d, n = idx.shape
    out = np.empty(Y.shape, dtype=float)
    for a in range(0, Y.shape[0], chunk):
        y = Y[a : a + chunk]
        mag = np.maximum(np.abs(y), EPS)
        neg = y < 0
        A = mag[:, idx]  # (b, L, d, n)
        par = np.bitwise_xor.reduce(neg[:, idx], axis=2)  # odd number of negatives
        allsign = np.where(par, -1.0, 1.0)[:, :, None, :]
        amin = A.argmin(axis=2)
        m1 = np.take_along_axis(A, amin[:, :, None, :], axis=2)
        A2 = A.copy()
        np.put_along_axis(A2, amin[:, :, None, :], np.inf, axis=2)
        m2 = A2.min(axis=2, keepdims=True)
        member = np.arange(d)[None, None, :, None]
        ext = np.where(member == amin[:, :, None, :], m2, m1)
        r = allsign * ext / A
        if literal:
            r = r * np.where(neg[:, idx], -1.0, 1.0)
        out[a : a + chunk] = r.reshape(len(y), -1).astype(np.float32) @ tab.scatter
    return out


def varphi(y, checks: DualCheckSet, literal: bool = False) -> np.ndarray:
    """phi_j = sum of rho(j, l, i) over all checks l and offsets i."""
    return varphi_batch(_soft(y).y[None], checks, literal)[0]


def soft_flip_batch(Y, checks: DualCheckSet, mu: int = 7, max_rounds: int = 20,
                    literal: bool = False, flip_log: list | None = None):
    """Flip, per round, the ``mu`` most negative phi positions (sign only).

    Returns ``(hard, ok, rounds)`` like :func:`harddec.iter_reduce_batch`.
    A word whose phi has no negative entry left is given up.
    """
    eng = engine_for(checks)
    Y = np.atleast_2d(np.asarray(Y, dtype=float)).copy()
    nb, n = Y.shape
    H = (Y < 0).astype(np.uint8)
    W = eng.syndrome_bits(H)
    active = W.any(axis=1)
    ok = ~active.copy()
    rounds = np.zeros(nb, dtype=np.int64)
    S = eng.S
    for rnd in range(1, max_rounds + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        rounds[idx] = rnd
        ph = varphi_batch(Y[idx], checks, literal)
        order = np.argsort(ph, axis=1, kind="stable")[:, :mu]
        negv = np.take_along_axis(ph, order, axis=1) < 0
        stuck = ~negv[:, 0]
        active[idx[stuck]] = False
        for t in range(order.shape[1]):
            sel = active[idx] & negv[:, t]
            rows = idx[sel]
            if rows.size == 0:
                continue
            j = order[sel, t]
            Y[rows, j] = -Y[rows, j]
            H[rows, j] ^= 1
            W[rows] ^= S[j]
            if flip_log is not None:
                flip_log.extend((int(x), 1) for x in j)
            done = ~W[rows].any(axis=1)
            ok[rows[done]] = True
            active[rows[done]] = False
    return H, ok, rounds


def decode_soft_flip(y, spec: CodeSpec, checks: DualCheckSet, mu: int = 7,
                     max_rounds: int = 20, literal: bool = False) -> DecodeReport:
    y = _soft(y)
    log = []
    H, ok, rounds = soft_flip_batch(y.y[None], checks, mu, max_rounds, literal, log)
    r = CyclicPoly.binary(spec.n, np.flatnonzero(y.hard))
    if not ok[0]:
        return DecodeReport(Status.FAILED, None, None, int(rounds[0]), log)
    c = CyclicPoly.binary(spec.n, np.flatnonzero(H[0]))
    return DecodeReport(Status.CORRECTED, c, r - c, int(rounds[0]), log)


def decode_soft_infoset(y, spec: CodeSpec, checks: DualCheckSet, k0: int | None = None,
                        seed: int | None = None, literal: bool = False) -> DecodeReport:
    """Information-set decoding on the positions with the largest phi."""
    y = _soft(y)
    return decode_info_set(y.hard, spec, checks, k0, seed,
                           reliability=varphi(y, checks, literal))
