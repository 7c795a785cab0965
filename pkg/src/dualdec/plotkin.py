"""(u | u+v) construction, its hard and soft decoders, and channel polarization.

Bits are 0/1 uint8 arrays; soft values use BPSK 0 -> +1, 1 -> -1.  A node
holds C1 (the ``left`` code, carried in both halves) and C2 (the ``right``
code, added to the second half), so its words are (c1 | c1 + c2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import erfc

from .codebook import ParameterOutOfRange
from .cyclicring import LengthMismatch

__all__ = [
    "LeafCode",
    "PlotkinNode",
    "PolarizationRow",
    "combine",
    "hard_decode",
    "leaf_index",
    "polarization_analytic",
    "polarization_report",
    "qfunc",
    "rm_build",
    "rm_decode",
    "sigma_for",
    "soft_project",
    "soft_refine",
]


def qfunc(x):
    return 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2))


def sigma_for(rate: float, ebn0_db: float) -> float:
    """Noise standard deviation for unit-energy BPSK at the given Eb/N0."""
    return math.sqrt(1.0 / (2 * rate * 10 ** (ebn0_db / 10)))


@dataclass(frozen=True)
class LeafCode:
    """Repetition (``"rep"``, k = 1) or universe (``"universe"``, k = n) code."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("rep", "universe"):
            raise ValueError(f"unknown leaf kind {self.kind!r}")

    @property
    def k(self) -> int:
        return 1 if self.kind == "rep" else self.n

    @property
    def d(self) -> int:
        return self.n if self.kind == "rep" else 1

    def encode(self, info) -> np.ndarray:
        info = np.asarray(info, dtype=np.uint8)
        if self.kind == "rep":
            return np.repeat(info[..., :1], self.n, axis=-1)
        return info.copy()

    def decode_hard(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=np.uint8)
        if self.kind == "universe":
            return r.copy()
        # majority; a tie decodes to the zero word
        bit = (2 * r.sum(axis=-1, dtype=np.int64) > self.n).astype(np.uint8)
        return np.repeat(bit[..., None], self.n, axis=-1)

    def decode_soft(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self.kind == "universe":
            return (y < 0).astype(np.uint8)
        bit = (y.sum(axis=-1) < 0).astype(np.uint8)
        return np.repeat(bit[..., None], self.n, axis=-1)


Component = Union[LeafCode, "PlotkinNode"]


@dataclass(frozen=True)
class PlotkinNode:
    left: Component
    right: Component

    def __post_init__(self):
        if self.left.n != self.right.n:
            raise LengthMismatch(f"component lengths differ: {self.left.n} != {self.right.n}")

    @property
    def n(self) -> int:
        return 2 * self.left.n

    @property
    def k(self) -> int:
        return self.left.k + self.right.k

    @property
    def d(self) -> int:
        return min(2 * self.left.d, self.right.d)

    @property
    def params(self) -> tuple[int, int, int]:
        return self.n, self.k, self.d

    def encode(self, info) -> np.ndarray:
        info = np.asarray(info, dtype=np.uint8)
        k1 = self.left.k
        return combine(self.left.encode(info[..., :k1]), self.right.encode(info[..., k1:]))

    def decode_hard(self, r) -> np.ndarray:
        return hard_decode(r, self.left.decode_hard, self.right.decode_hard)

    def decode_soft(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        c2 = self.right.decode_soft(soft_project(y))
        c1 = self.left.decode_soft(soft_refine(y, 1.0 - 2.0 * c2))
        return np.concatenate([c1, c1 ^ c2], axis=-1)


def combine(c1, c2) -> np.ndarray:
    """(c1 | c1 + c2)."""
    c1 = np.asarray(c1, dtype=np.uint8)
    c2 = np.asarray(c2, dtype=np.uint8)
    if c1.shape != c2.shape:
        raise LengthMismatch(f"cannot combine shapes {c1.shape} and {c2.shape}")
    return np.concatenate([c1, c1 ^ c2], axis=-1)


def hard_decode(r, dec1, dec2) -> np.ndarray:
    """Two-sided hard decoding of a (u | u+v) word; returns the codeword.

    c2 comes from the sum of the halves.  c1 is decoded from each half and the
    estimate that changed fewer bits wins, the left half on a tie.
    """
    r = np.asarray(r, dtype=np.uint8)
    h = r.shape[-1] // 2
    r1, r2 = r[..., :h], r[..., h:]
    c2 = dec2(r1 ^ r2)
    a_in, b_in = r1, r2 ^ c2
    a, b = dec1(a_in), dec1(b_in)
    da = np.count_nonzero(a ^ a_in, axis=-1)
    db = np.count_nonzero(b ^ b_in, axis=-1)
    c1 = np.where((db < da)[..., None], b, a)
    return np.concatenate([c1, c1 ^ c2], axis=-1)


def soft_project(y) -> np.ndarray:
    """Soft value of c1 + c2 from the two halves: sign product times min magnitude."""
    y = np.asarray(y, dtype=float)
    h = y.shape[-1] // 2
    y1, y2 = y[..., :h], y[..., h:]
    s = np.where((y1 < 0) ^ (y2 < 0), -1.0, 1.0)
    return s * np.minimum(np.abs(y1), np.abs(y2))


def soft_refine(y, x2) -> np.ndarray:
    """y1 + y2 * x2: both halves vote for c1 once the BPSK word x2 of c2 is known."""
    y = np.asarray(y, dtype=float)
    h = y.shape[-1] // 2
    return y[..., :h] + y[..., h:] * np.asarray(x2, dtype=float)


def rm_build(r: int, m: int) -> Component:
    """RM(r, m) as nested (u | u+v) nodes with repetition and universe leaves."""
    if not 0 <= r <= m:
        raise ParameterOutOfRange(f"need 0 <= r <= m, got r={r}, m={m}")
    n = 1 << m
    if r == 0:
        return LeafCode("rep", n)
    if r == m:
        return LeafCode("universe", n)
    return PlotkinNode(rm_build(r, m - 1), rm_build(r - 1, m - 1))


def rm_decode(y, node: Component, hard: bool = False) -> np.ndarray:
    """Decode soft values (or bits, when ``hard`` and integer-typed) to a codeword."""
    y = np.asarray(y)
    if hard:
        bits = y.astype(np.uint8) if y.dtype.kind in "biu" else (y < 0).astype(np.uint8)
        return node.decode_hard(bits)
    return node.decode_soft(y)


# -- polarization ----------------------------------------------------------

def leaf_index(path: str) -> int:
    """Component-channel number of a path of ``P`` (project) and ``R`` (refine) steps.

    The all-project path gets the largest number 2^depth, the all-refine path 1.
    """
    D = len(path)
    return 1 + sum(1 << (D - 1 - t) for t, s in enumerate(path) if s == "P")


@dataclass(frozen=True)
class PolarizationRow:
    path: str
    index: int
    ber: float
    bits: int
    analytic: float | None = None

    def to_dict(self) -> dict:
        return {"component": f"p{self.index}", "path": self.path, "ber": self.ber,
                "bits": self.bits, "analytic": self.analytic}


def _xor_ber(p: float) -> float:
    return 2 * p * (1 - p)


def polarization_analytic(path: str, sigma: float) -> float | None:
    """Closed-form BER where one exists: refine steps before any project step.

    After t refines the channel is BPSK with noise sigma / sqrt(2^t); each
    following project step XORs two independent hard decisions.
    """
    t = 0
    while t < len(path) and path[t] == "R":
        t += 1
    p = float(qfunc(math.sqrt(1 << t) / sigma))
    for s in path[t:]:
        if s == "R":
            return None
        p = _xor_ber(p)
    return p


def polarization_report(depth: int, rate: float, ebn0_db: float, trials: int,
                        seed: int | None = 0, chunk: int = 1 << 16) -> list[PolarizationRow]:
    """Genie-aided BER of every component channel after ``depth`` splits.

    Each trial sends one random bit per component channel through the
    recursive (u | u+v) map over AWGN.  Decoding projects for the right
    branch and refines with the *true* right-branch word, so every channel
    is measured without error propagation.  Row 0 is the physical channel.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    sigma = sigma_for(rate, ebn0_db)
    N = 1 << depth
    rng = np.random.default_rng(seed)
    paths = _paths(depth)
    errs = dict.fromkeys(paths, 0)
    chan_err = 0
    done = 0
    while done < trials:
        b = min(chunk, trials - done)
        leaves = rng.integers(0, 2, size=(b, N), dtype=np.uint8)
        x = 1.0 - 2.0 * _encode_leaves(leaves)
        y = x + sigma * rng.standard_normal(x.shape)
        chan_err += int(np.count_nonzero((y < 0) != (x < 0)))
        for path, soft, truth in _genie(y, leaves, ""):
            errs[path] += int(np.count_nonzero((soft < 0) != (truth == 1)))
        done += b
    rows = [PolarizationRow("", 0, chan_err / (trials * N), trials * N,
                            float(qfunc(1 / sigma)))]
    for path in sorted(paths, key=leaf_index, reverse=True):
        rows.append(PolarizationRow(path, leaf_index(path), errs[path] / trials, trials,
                                    polarization_analytic(path, sigma)))
    return rows


def _paths(depth: int) -> list[str]:
    out = [""]
    for _ in range(depth):
        out = [p + s for p in out for s in "PR"]
    return out


def _encode_leaves(leaves: np.ndarray) -> np.ndarray:
    """Recursive (u | u+v) map of one bit per channel.

    Leaves are ordered by path with ``R`` (the u side) before ``P`` at
    every level, matching the order of :func:`_genie`.
    """
    N = leaves.shape[-1]
    if N == 1:
        return leaves
    half = N // 2
    u = _encode_leaves(leaves[..., half:])  # R subtree
    v = _encode_leaves(leaves[..., :half])  # P subtree
    return combine(u, v)


def _genie(y: np.ndarray, leaves: np.ndarray, prefix: str):
    N = leaves.shape[-1]
    if N == 1:
        yield prefix, y[..., 0], leaves[..., 0]
        return
    half = N // 2
    v_leaves, u_leaves = leaves[..., :half], leaves[..., half:]
    yield from _genie(soft_project(y), v_leaves, prefix + "P")
    x2 = 1.0 - 2.0 * _encode_leaves(v_leaves)
    yield from _genie(soft_refine(y, x2), u_leaves, prefix + "R")
