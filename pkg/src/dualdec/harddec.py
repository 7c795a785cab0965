"""Hard-decision decoding with syndrome polynomials w(x) = r(x) b(x).

For each dual check b^(l) the syndrome w^(l) depends only on the error.  Each
set coefficient of w^(l) is the error seen through one shift of the check,
so shifting w^(l) back by every support offset b_i and counting ones per
position gives the vote Phi_j.  Large Phi_j marks likely errors and small
Phi_j likely correct positions.

Binary words are handled as uint8 arrays of shape (..., n).  The batch paths
rewrite the shift-and-count as matrix products over precomputed 0/1
incidence matrices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .codebook import CodeSpec
from .cyclicring import CyclicPoly, mul_mod, rotate_mask, shift
from .dualmine import DualCheckSet
from .linalg import gf2_info_set, gf2_inverse

__all__ = [
    "CheckEngine",
    "DecodeReport",
    "NotNonbinary",
    "OpCounter",
    "PhiMatrix",
    "PhiProfile",
    "RankDeficient",
    "Status",
    "check_support",
    "decode_info_set",
    "decode_iter_reduce",
    "decode_nonbinary",
    "delta",
    "flip",
    "iter_reduce_batch",
    "phi",
    "phi_eq7",
    "phi_matrix",
    "syndromes",
]


class RankDeficient(ArithmeticError):
    pass


class NotNonbinary(TypeError):
    pass


class Status(str, enum.Enum):
    CORRECTED = "Corrected"
    FAILED = "Failed"
    AMBIGUOUS = "Ambiguous"


@dataclass
class DecodeReport:
    status: Status
    codeword: CyclicPoly | None
    error: CyclicPoly | None
    iterations: int = 0
    flips: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        def word(p):
            if p is None:
                return None
            return [int(v) for v in p.coeffs]
        return {
            "status": self.status.value,
            "codeword": word(self.codeword),
            "error": word(self.error),
            "error_support": None if self.error is None else self.error.support,
            "iterations": self.iterations,
            "flips": [[int(j), int(v)] for j, v in self.flips],
        }


@dataclass(frozen=True)
class PhiProfile:
    counts: np.ndarray

    def largest(self, count: int) -> np.ndarray:
        """Positions of the ``count`` largest values, ties to the lower index."""
        return np.argsort(-self.counts, kind="stable")[:count]

    def smallest(self, count: int) -> np.ndarray:
        return np.argsort(self.counts, kind="stable")[:count]


@dataclass(frozen=True)
class PhiMatrix:
    """Row i < q-1 counts votes for error value alpha^i, the last row counts zeros."""

    counts: np.ndarray

    @property
    def zero_row(self) -> np.ndarray:
        return self.counts[-1]

    @property
    def value_rows(self) -> np.ndarray:
        return self.counts[:-1]

    def column_max(self) -> np.ndarray:
        return self.value_rows.max(axis=0)

    def column_argmax(self) -> np.ndarray:
        return self.value_rows.argmax(axis=0)


@dataclass
class OpCounter:
    xor: int = 0
    inc: int = 0


class CheckEngine:
    """Index tables and incidence matrices derived from a check set.

    ``syn_idx[l, i, j] = j - b_i`` (positions read by syndrome coefficient
    j) and ``obs_idx[l, i, j] = j + b_i`` (the coefficient that the shift by
    -b_i moves onto position j).
    """

    def __init__(self, checks: DualCheckSet):
        self.checks = checks
        self.n = n = checks.n
        self.L = checks.L
        self.d = checks.weight
        self.field = checks.code.symbol_field
        B = checks.supports
        self.B = B
        self.beta = checks.coeffs
        j = np.arange(n)
        self.syn_idx = (j[None, None, :] - B[:, :, None]) % n
        self.obs_idx = (j[None, None, :] + B[:, :, None]) % n

    @cached_property
    def S(self) -> np.ndarray:
        """(n, L*n) 0/1: row j is x^j b^(l)(x) for all l, so w = r S mod 2."""
        n, L = self.n, self.L
        S = np.zeros((n, L * n), dtype=np.uint8)
        cols = np.arange(L)[:, None, None] * n + np.arange(n)[None, None, :]
        cols = np.broadcast_to(cols, self.syn_idx.shape)
        S[self.syn_idx.ravel(), cols.ravel()] = 1
        return S

    @cached_property
    def S32(self) -> np.ndarray:
        return self.S.astype(np.float32)

    @cached_property
    def M32(self) -> np.ndarray:
        """(L*n, n) counts: Phi = w M."""
        n, L = self.n, self.L
        M = np.zeros((L * n, n), dtype=np.float32)
        rows = (np.arange(L)[:, None, None] * n + self.obs_idx).ravel()
        cols = np.broadcast_to(np.arange(n), self.obs_idx.shape).ravel()
        np.add.at(M, (rows, cols), 1.0)
        return M

    # -- binary batch kernels ----------------------------------------------

    def syndrome_bits(self, R) -> np.ndarray:
        """(B, L*n) uint8 syndromes of binary words R (B, n)."""
        R = np.atleast_2d(np.asarray(R, dtype=np.float32))
        return (R @ self.S32).astype(np.int64).astype(np.uint8) & 1

    def phi_from_syndromes(self, W) -> np.ndarray:
        return (np.asarray(W, dtype=np.float32) @ self.M32).astype(np.int64)

    def phi_bits(self, R) -> np.ndarray:
        return self.phi_from_syndromes(self.syndrome_bits(R))

    # -- GF(2^m) kernels -----------------------------------------------------

    def syndrome_symbols(self, r) -> np.ndarray:
        """(L, n) syndromes over GF(2^m) of one received word."""
        f = self.field
        r = np.asarray(r, dtype=np.int64)
        terms = f.vmul(self.beta[:, :, None], r[self.syn_idx])
        return np.bitwise_xor.reduce(terms, axis=1)

    @cached_property
    def beta_inv(self) -> np.ndarray:
        return self.field.vinv(self.beta)

    def phi_matrix_from_syndromes(self, W) -> np.ndarray:
        f = self.field
        q1 = f.n
        L, d, n = self.syn_idx.shape
        obs = f.vmul(self.beta_inv[:, :, None], W[np.arange(L)[:, None, None], self.obs_idx])
        rows = np.where(obs == 0, q1, f.log[obs])
        flat = rows * n + np.arange(n)
        return np.bincount(flat.ravel(), minlength=(q1 + 1) * n).reshape(q1 + 1, n)


_ENGINES: dict[int, CheckEngine] = {}


def engine_for(checks: DualCheckSet) -> CheckEngine:
    key = id(checks)
    eng = _ENGINES.get(key)
    if eng is None or eng.checks is not checks:
        eng = CheckEngine(checks)
        _ENGINES[key] = eng
    return eng


def _as_array(r) -> np.ndarray:
    if isinstance(r, CyclicPoly):
        return r.coeffs
    return np.asarray(r, dtype=np.int64)


def syndromes(r: CyclicPoly, checks: DualCheckSet) -> list[CyclicPoly]:
    """w^(l)(x) = r(x) b^(l)(x) mod (x^n - 1) for every check."""
    return [mul_mod(r, b) for b in checks.checks]


def check_support(j: int, l: int, i: int, checks: DualCheckSet) -> list[int]:
    """Positions {j + b_i - b_t : t} of the i-th check through position j."""
    n, d = checks.n, checks.weight
    if not (0 <= j < n and 0 <= l < checks.L and 0 <= i < d):
        raise IndexError(f"(j, l, i)=({j}, {l}, {i}) out of range")
    b = checks.checks[l].support
    return [(j + b[i] - bt) % n for bt in b]


def phi(r, checks: DualCheckSet) -> PhiProfile:
    """Phi_j = sum over checks and support offsets b_i of w^(l)_{j + b_i}.

    Computed by shifting each syndrome back by -b_i and adding as integers.
    """
    if not checks.code.is_binary:
        raise TypeError("phi is defined for binary codes; use phi_matrix")
    n = checks.n
    if isinstance(r, CyclicPoly):
        ws = [w.coeffs for w in syndromes(r, checks)]
    else:
        eng = engine_for(checks)
        ws = eng.syndrome_bits(r)[0].reshape(checks.L, n)
    counts = np.zeros(n, dtype=np.int64)
    for w, b in zip(ws, checks.checks):
        for bi in b.support:
            counts += np.roll(w, -bi)
    return PhiProfile(counts)


def phi_eq7(r, checks: DualCheckSet, ops: OpCounter | None = None) -> PhiProfile:
    """Phi straight from the received bits: one parity per check support P(j, l, i).

    Reference implementation; ``ops`` counts the XORs and counter increments.
    """
    rr = [int(v) for v in _as_array(r)]
    n, d = checks.n, checks.weight
    counts = np.zeros(n, dtype=np.int64)
    supports = [b.support for b in checks.checks]
    for j in range(n):
        total = 0
        for b in supports:
            for bi in b:
                s = 0
                for bl in b:
                    s ^= rr[(j + bi - bl) % n]
                total += s
        counts[j] = total
        if ops is not None:
            ops.xor += len(supports) * d * d
            ops.inc += len(supports) * d
    return PhiProfile(counts)


def delta(r, checks: DualCheckSet) -> np.ndarray:
    """Delta_j: total change in syndrome weight when bit j is flipped."""
    n = checks.n
    if not isinstance(r, CyclicPoly):
        r = CyclicPoly.binary(n, np.flatnonzero(_as_array(r)))
    ws = [w.mask for w in syndromes(r, checks)]
    bs = [b.mask for b in checks.checks]
    out = np.zeros(n, dtype=np.int64)
    for j in range(n):
        tot = 0
        for w, b in zip(ws, bs):
            tot += (w ^ rotate_mask(b, j, n)).bit_count() - w.bit_count()
        out[j] = tot
    return out


def flip(ws: list[CyclicPoly], j: int, checks: DualCheckSet) -> list[CyclicPoly]:
    """Syndromes after flipping received bit j: w^(l) + x^j b^(l)."""
    return [w + shift(b, j) for w, b in zip(ws, checks.checks)]


def _ranked(values: np.ndarray, descending: bool, rng) -> np.ndarray:
    """Argsort along the last axis; ties by index, or randomly when rng is given."""
    keys = -values if descending else values
    if rng is None:
        return np.argsort(keys, axis=-1, kind="stable")
    jitter = rng.random(keys.shape)
    return np.lexsort((jitter, keys), axis=-1)


def iter_reduce_batch(R, checks: DualCheckSet, mu: int = 7, max_rounds: int = 20,
                      adaptive: bool = False, rng=None, flip_log: list | None = None):
    """Iterative error reduction on a batch of binary words.

    Each round ranks positions by Phi and flips the ``mu`` largest one at a
    time (``adaptive``: every position attaining the maximum), stopping a
    word as soon as all its syndromes vanish.

    Returns ``(decoded, corrected, rounds)`` with ``decoded`` (B, n) uint8,
    ``corrected`` a bool mask and ``rounds`` the rounds each word used.
    """
    eng = engine_for(checks)
    R = np.atleast_2d(np.asarray(R, dtype=np.uint8)).copy()
    nb, n = R.shape
    S = eng.S
    W = eng.syndrome_bits(R)
    active = W.any(axis=1)
    rounds = np.zeros(nb, dtype=np.int64)
    for rnd in range(1, max_rounds + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        rounds[idx] = rnd
        P = eng.phi_from_syndromes(W[idx])
        order = _ranked(P, True, rng)
        if adaptive:
            top = P.max(axis=1, keepdims=True)
            valid = np.take_along_axis(P, order, axis=1) == top
            steps = int(valid.sum(axis=1).max())
        else:
            steps = min(mu, n)
            valid = np.ones((idx.size, steps), dtype=bool)
        for t in range(steps):
            sel = active[idx] & valid[:, t]
            rows = idx[sel]
            if rows.size == 0:
                continue
            j = order[sel, t]
            R[rows, j] ^= 1
            W[rows] ^= S[j]
            if flip_log is not None:
                flip_log.extend((int(x), 1) for x in j)
            done = ~W[rows].any(axis=1)
            active[rows[done]] = False
    return R, ~active, rounds


def _report(spec_field, n, r_arr, c_arr, status, iterations, flips):
    rp = CyclicPoly(spec_field, n, coeffs=r_arr)
    cp = CyclicPoly(spec_field, n, coeffs=c_arr)
    return DecodeReport(status, cp, rp - cp, iterations, flips)


def decode_iter_reduce(r, checks: DualCheckSet, mu: int = 7, max_rounds: int = 20,
                       adaptive: bool = False, seed: int | None = None) -> DecodeReport:
    """Flip the ``mu`` largest-Phi positions per round until the syndromes vanish.

    ``seed`` switches tie-breaking between equal Phi values from lowest index
    to a seeded random choice.
    """
    field = checks.code.symbol_field
    r_arr = _as_array(r) & 1
    rng = None if seed is None else np.random.default_rng(seed)
    log = []
    dec, ok, rounds = iter_reduce_batch(r_arr[None], checks, mu, max_rounds, adaptive, rng, log)
    c = dec[0].astype(np.int64)
    if not ok[0]:
        return DecodeReport(Status.FAILED, None, None, int(rounds[0]), log)
    return _report(field, checks.n, r_arr, c, Status.CORRECTED, int(rounds[0]), log)


def info_set_candidates(spec: CodeSpec, r_arr: np.ndarray, order, k0: int | None):
    """Re-encode r on the first independent k positions of ``order``.

    Returns ``(candidates, positions)``: the plain re-encoding followed by
    the k variants with one information bit flipped, as n-bit masks.
    """
    k, n = spec.k, spec.n
    if k0 is None:
        k0 = n - k
    pool = [int(j) for j in order[: k + k0]]
    pos = gf2_info_set(spec.gen_columns, pool, k)
    if len(pos) < k:
        raise RankDeficient(f"{k + k0} most reliable positions have rank {len(pos)} < k={k}")
    G = spec.gen_matrix
    mrows = []
    for i in range(k):
        v = 0
        for t, j in enumerate(pos):
            if G[i, j]:
                v |= 1 << t
        mrows.append(v)
    minv = gf2_inverse(mrows, k)
    grows = spec.gen_rows
    sysrows = []
    for t in range(k):
        v, bits, i = 0, minv[t], 0
        while bits:
            if bits & 1:
                v ^= grows[i]
            bits >>= 1
            i += 1
        sysrows.append(v)
    c0 = 0
    for t, j in enumerate(pos):
        if r_arr[j]:
            c0 ^= sysrows[t]
    return [c0] + [c0 ^ s for s in sysrows], pos


def choose_candidate(cands: list[int], r_mask: int, rng=None):
    """Nearest candidate in Hamming distance; returns (mask, unique)."""
    dist = [(c ^ r_mask).bit_count() for c in cands]
    best = min(dist)
    ties = [c for c, dd in zip(cands, dist) if dd == best]
    ties = list(dict.fromkeys(ties))
    if len(ties) == 1:
        return ties[0], True
    if rng is None:
        return ties[0], False
    return ties[int(rng.integers(len(ties)))], False


def _mask_of(arr) -> int:
    v = 0
    for j in np.flatnonzero(arr):
        v |= 1 << int(j)
    return v


def decode_info_set(r, spec: CodeSpec, checks: DualCheckSet, k0: int | None = None,
                    seed: int | None = None, reliability=None) -> DecodeReport:
    """Information-set decoding on the positions with the smallest Phi.

    ``reliability`` overrides the ranking: positions are taken in descending
    reliability order (used by the soft-decision variant).  ``k0`` bounds how
    far past the first k ranked positions the search for an information set
    may reach; the default allows the whole ranking.
    """
    r_arr = _as_array(r) & 1
    rng = None if seed is None else np.random.default_rng(seed)
    if reliability is None:
        order = _ranked(phi(r_arr[None], checks).counts, False, rng)
    else:
        order = _ranked(np.asarray(reliability, dtype=float), True, rng)
    cands, _ = info_set_candidates(spec, r_arr, order, k0)
    r_mask = _mask_of(r_arr)
    best, unique = choose_candidate(cands, r_mask, rng)
    c = CyclicPoly.binary(spec.n, mask=best)
    rp = CyclicPoly.binary(spec.n, mask=r_mask)
    flips = [(j, 1) for j in (rp - c).support]
    status = Status.CORRECTED if unique else Status.AMBIGUOUS
    return DecodeReport(status, c, rp - c, 1, flips)


def phi_matrix(r, checks: DualCheckSet) -> PhiMatrix:
    """Per-value votes: each shifted syndrome term is unscaled by beta_i^{-1}."""
    if checks.code.is_binary:
        raise NotNonbinary("phi_matrix needs a code over GF(2^m), m > 1")
    eng = engine_for(checks)
    W = eng.syndrome_symbols(_as_array(r))
    return PhiMatrix(eng.phi_matrix_from_syndromes(W))


def _pick_nonbinary(P: np.ndarray, strategy: str):
    vals = P[:-1]
    if strategy == "max":
        flat = np.argmax(vals.T.ravel())  # ties -> lowest column
        col, row = divmod(int(flat), vals.shape[0])
    elif strategy == "zero-row":
        col = int(np.argmin(P[-1]))
        row = int(np.argmax(vals[:, col]))
    elif strategy == "combined":
        score = vals.max(axis=0) - P[-1]
        col = int(np.argmax(score))
        row = int(np.argmax(vals[:, col]))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return row, col


def decode_nonbinary(r, checks: DualCheckSet, strategy: str = "max",
                     max_steps: int | None = None) -> DecodeReport:
    """Subtract one (value, position) estimate at a time until the syndromes vanish.

    ``max``: the largest vote over all values and positions.  ``zero-row``:
    the position with the fewest zero observations.  ``combined``: largest
    column maximum minus zero count.
    """
    spec = checks.code
    if spec.is_binary:
        raise NotNonbinary("decode_nonbinary needs a code over GF(2^m), m > 1")
    f = spec.symbol_field
    eng = engine_for(checks)
    r0 = _as_array(r).copy()
    cur = r0.copy()
    if max_steps is None:
        max_steps = spec.n - spec.k
    flips = []
    for step in range(max_steps + 1):
        W = eng.syndrome_symbols(cur)
        if not W.any():
            return _report(f, spec.n, r0, cur, Status.CORRECTED, step, flips)
        if step == max_steps:
            break
        row, col = _pick_nonbinary(eng.phi_matrix_from_syndromes(W), strategy)
        v = f.alpha(row)
        cur[col] ^= v
        flips.append((col, v))
    return DecodeReport(Status.FAILED, None, None, max_steps, flips)
