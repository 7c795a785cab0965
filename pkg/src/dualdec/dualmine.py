"""Minimal-weight codewords of the dual code, up to cyclic shift.

The "dual" here is the cyclic code generated by h(x): its words b(x) satisfy
c(x) b(x) = 0 mod (x^n - 1) for every codeword c(x), which is what the
syndrome polynomials need.  It is the reversal of the usual dual, so weights
and counts are the same.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .codebook import CodeSpec, code_from_dict
from .cyclicring import CyclicPoly, ZeroPolynomial, mul_mod, rotate_mask, shift, square_map
from .linalg import nullspace

__all__ = [
    "DualCheckSet",
    "NoneFound",
    "binary_low_weight_search",
    "cache_dir",
    "cyclic_canonical",
    "load_checks",
    "mds_dual_min_weight",
    "mine_checks",
    "orbit_expand",
    "save_checks",
]

log = logging.getLogger(__name__)


class NoneFound(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class DualCheckSet:
    """L cyclically distinct dual codewords of weight d^perp.

    Every check is stored in canonical form: a support element sits at
    position 0 and carries coefficient 1.  ``supports[l]`` is sorted and
    starts with 0; ``coeffs[l][i]`` is the coefficient at ``supports[l][i]``.
    """

    code: CodeSpec
    weight: int
    checks: tuple[CyclicPoly, ...]

    @property
    def L(self) -> int:
        return len(self.checks)

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def supports(self) -> np.ndarray:
        return np.array([b.support for b in self.checks], dtype=np.int64).reshape(self.L, self.weight)

    @property
    def coeffs(self) -> np.ndarray:
        S = self.supports
        return np.array([[b[i] for i in row] for b, row in zip(self.checks, S)],
                        dtype=np.int64).reshape(self.L, self.weight)

    def validate(self) -> None:
        """Raise if a check is not a dual word of the stated weight or two are shifts."""
        seen = set()
        for b in self.checks:
            if b.weight != self.weight:
                raise ValueError(f"check {b} has weight {b.weight} != {self.weight}")
            if not mul_mod(self.code.g, b).is_zero():
                raise ValueError(f"check {b} does not annihilate the code")
            key = cyclic_canonical(b)
            if key in seen:
                raise ValueError("checks are not cyclically distinct")
            seen.add(key)

    def to_dict(self) -> dict:
        return {
            "code": self.code.to_dict(),
            "spec_hash": self.code.spec_hash(),
            "weight": self.weight,
            "L": self.L,
            "checks": [
                {"support": [int(s) for s in row], "coeffs": [int(c) for c in crow]}
                for row, crow in zip(self.supports, self.coeffs)
            ],
        }


def _canonical_key(b: CyclicPoly):
    n = b.n
    supp = b.support
    if not supp:
        raise ZeroPolynomial("zero polynomial has no canonical form")
    field = b.field
    best = None
    for p in supp:
        rs = sorted((s - p) % n for s in supp)
        if field.is_binary:
            key = (tuple(rs), ())
        else:
            c0 = field.inv(b[p])
            key = (tuple(rs), tuple(field.mul(b[(s + p) % n], c0) for s in rs))
        if best is None or key < best:
            best = key
    return best


def cyclic_canonical(b: CyclicPoly) -> CyclicPoly:
    """Representative of b's class under cyclic shifts (and scaling, over GF(2^m)).

    The representative is the rotation whose sorted support is lexicographically
    smallest; over GF(2^m) it is scaled to have coefficient 1 at position 0.
    """
    supp, coefs = _canonical_key(b)
    if b.field.is_binary:
        return CyclicPoly.binary(b.n, supp)
    return CyclicPoly.from_terms(b.field, b.n, zip(supp, coefs))


def _orbit_m(b: CyclicPoly) -> int:
    if not b.field.is_binary:
        return b.field.m
    return (b.n + 1).bit_length() - 1


def orbit_expand(b: CyclicPoly, m: int | None = None) -> set[CyclicPoly]:
    """Closure of {b} under cyclic shifts and the squaring map."""
    if m is None:
        m = _orbit_m(b)
    out = set()
    cur = b
    for _ in range(m):
        for s in range(b.n):
            out.add(shift(cur, s))
        cur = square_map(cur)
    return out


def _canonical_checkset(spec: CodeSpec, weight: int, canon: set) -> DualCheckSet:
    field = spec.symbol_field
    checks = []
    for supp, coefs in sorted(canon):
        if field.is_binary:
            checks.append(CyclicPoly.binary(spec.n, supp))
        else:
            checks.append(CyclicPoly.from_terms(field, spec.n, zip(supp, coefs)))
    return DualCheckSet(spec, weight, tuple(checks))


def mds_dual_min_weight(spec: CodeSpec) -> DualCheckSet:
    """All cyclically distinct weight-(k+1) words of an RS code's dual.

    Enumerates every support of size k+1 that contains position 0.  The dual
    has dimension n-k, so forcing the other n-k-1 positions to zero leaves a
    one-dimensional solution space; its words have full weight (MDS).
    """
    if spec.family != "RS":
        raise ValueError("mds_dual_min_weight needs an RS code")
    n, field = spec.n, spec.symbol_field
    w = spec.k + 1
    kd = n - spec.k  # dual dimension
    hc = spec.h.coeffs
    H = np.stack([np.roll(hc, i) for i in range(kd)])
    canon = set()
    for rest in itertools.combinations(range(1, n), w - 1):
        support = (0,) + rest
        zeros = [j for j in range(n) if j not in support]
        basis = nullspace(field, H[:, zeros].T)
        if basis.shape[0] != 1:
            continue
        a = basis[0]
        word = np.zeros(n, dtype=np.int64)
        for i in np.flatnonzero(a):
            word ^= field.vmul(int(a[i]), H[i])
        if np.count_nonzero(word) != w:
            continue
        b = CyclicPoly(field, n, coeffs=word)
        canon.add(_canonical_key(b))
    return _canonical_checkset(spec, w, canon)


def _systematic(rows: list[int], order, n: int):
    """Row-reduce bitmask rows with pivots tried in ``order``; returns reduced rows."""
    rows = list(rows)
    k = len(rows)
    r = 0
    for c in order:
        if r == k:
            break
        bit = 1 << c
        p = next((i for i in range(r, k) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        for i in range(k):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        r += 1
    return rows[:r]


def binary_low_weight_search(spec: CodeSpec, target_w: int, budget: int = 4000,
                             seed: int | None = 0, window: int = 20,
                             pair_depth: int = 2) -> DualCheckSet:
    """Randomised information-set search for weight-``target_w`` dual words.

    Each iteration row-reduces the dual generator on a random information set
    and scans all single rows and (``pair_depth`` = 2) pairwise sums.  Every
    new hit is closed under shifts and squaring.  The search stops when the
    budget is spent, or once half of it is spent and the last ``window``
    iterations with hits produced no new cyclic class.
    """
    if not spec.is_binary:
        raise ValueError("binary_low_weight_search needs a binary code")
    n = spec.n
    m = spec.field.m
    kd = n - spec.k
    hm = spec.h.mask
    rows = [rotate_mask(hm, i, n) for i in range(kd)]
    rng = np.random.default_rng(seed)
    seen: set[int] = set()
    canon: set = set()
    quiet = 0
    it = 0
    for it in range(1, budget + 1):
        red = _systematic(rows, rng.permutation(n), n)
        cands = [r for r in red if r.bit_count() == target_w]
        if pair_depth >= 2:
            for a, b in itertools.combinations(red, 2):
                v = a ^ b
                if v.bit_count() == target_w:
                    cands.append(v)
        if not cands:
            continue
        new = False
        for v in cands:
            if v in seen:
                continue
            new = True
            b = CyclicPoly.binary(n, mask=v)
            cur = b
            for _ in range(m):
                canon.add(_canonical_key(cur))
                cm = cur.mask
                for s in range(n):
                    seen.add(rotate_mask(cm, s, n))
                cur = square_map(cur)
        quiet = 0 if new else quiet + 1
        if quiet >= window and it >= budget // 2:
            break
    log.info("low-weight search: %d iterations, L=%d", it, len(canon))
    if not canon:
        raise NoneFound(f"no weight-{target_w} dual word found in {budget} iterations")
    return _canonical_checkset(spec, target_w, canon)


def cache_dir() -> Path:
    return Path(os.environ.get("DUALDEC_CACHE", Path.home() / ".cache" / "dualdec"))


def save_checks(checks: DualCheckSet, path, meta: dict | None = None) -> None:
    d = checks.to_dict()
    if meta:
        d["meta"] = meta
    Path(path).write_text(json.dumps(d, indent=1))


def load_checks(path, spec: CodeSpec | None = None) -> DualCheckSet:
    d = json.loads(Path(path).read_text())
    if spec is None:
        spec = code_from_dict(d["code"])
    elif d.get("spec_hash") not in (None, spec.spec_hash()):
        raise ValueError("checks file belongs to a different code spec")
    field = spec.symbol_field
    checks = []
    for c in d["checks"]:
        if field.is_binary:
            checks.append(CyclicPoly.binary(spec.n, c["support"]))
        else:
            checks.append(CyclicPoly.from_terms(field, spec.n, zip(c["support"], c["coeffs"])))
    return DualCheckSet(spec, int(d["weight"]), tuple(checks))


def mine_checks(spec: CodeSpec, weight: int | None = None, *, budget: int = 4000,
                seed: int = 0, use_cache: bool = True) -> DualCheckSet:
    """Mine (or load from the cache) the minimal-weight dual checks of ``spec``."""
    if spec.family == "RS":
        weight = spec.k + 1
    elif weight is None:
        raise ValueError("binary codes need the target dual weight")
    path = cache_dir() / f"{spec.spec_hash()}-w{weight}.json"
    if use_cache and path.exists():
        return load_checks(path, spec)
    if spec.family == "RS":
        checks = mds_dual_min_weight(spec)
    else:
        checks = binary_low_weight_search(spec, weight, budget, seed)
    if use_cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_checks(checks, path, {"seed": seed, "budget": budget})
    return checks
