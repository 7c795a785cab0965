"""Cyclic RS, BCH and punctured Reed-Muller codes of primitive length n = 2^m - 1.

Generator roots are the negative powers alpha^{-j}: an RS(n, k) code has roots
j = k..n-1, a BCH code the union of the selected cyclotomic cosets.  With this
convention every codeword c(x) and every multiple b(x) of the parity-check
polynomial h(x) = (x^n - 1)/g(x) satisfy c(x) b(x) = 0 mod (x^n - 1).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from pathlib import Path

import numpy as np

from .cyclicring import GF2, CyclicPoly, mul_mod, shift
from .galois import Field, make_field
from .linalg import row_reduce

__all__ = [
    "CodeSpec",
    "InfoTooLong",
    "NonBinaryCoefficient",
    "ParameterOutOfRange",
    "bch_generator",
    "code_from_dict",
    "cyclotomic_cosets",
    "encode",
    "is_codeword",
    "load_code_spec",
    "narrow_sense_reps",
    "punctured_rm_generator",
    "rs_generator",
]


class ParameterOutOfRange(ValueError):
    pass


class NonBinaryCoefficient(ArithmeticError):
    pass


class InfoTooLong(ValueError):
    pass


# -- ordinary polynomials over GF(2^m), coefficient lists low -> high -------

def _pmul(field: Field, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] ^= field.mul(ai, bj)
    return out


def _pdivmod(field: Field, num, den):
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    dd = len(den) - 1
    lead_inv = field.inv(den[-1])
    quot = [0] * max(len(num) - dd, 1)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            f = field.mul(c, lead_inv)
            quot[i - dd] = f
            for t, dt in enumerate(den):
                if dt:
                    num[i - dd + t] ^= field.mul(f, dt)
    return quot, num[:dd] if dd else []


def _to_ring(field: Field, n: int, p) -> CyclicPoly:
    coeffs = [0] * n
    for i, c in enumerate(p):
        coeffs[i % n] ^= c
    return CyclicPoly(GF2 if field.is_binary else field, n, coeffs=coeffs)


def _peval(field: Field, p, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = field.mul(acc, x) ^ c
    return acc


def cyclotomic_cosets(n: int, m: int | None = None) -> dict[int, list[int]]:
    """Cyclotomic cosets of 2 modulo n keyed by their smallest member."""
    if m is None:
        m = (n + 1).bit_length() - 1
    if n != (1 << m) - 1:
        raise ParameterOutOfRange(f"n={n} is not 2^{m} - 1")
    seen = set()
    out = {}
    for i in range(n):
        if i in seen:
            continue
        coset, j = [], i
        while j not in coset:
            coset.append(j)
            j = (2 * j) % n
        seen.update(coset)
        out[i] = sorted(coset)
    return out


def _longest_run(roots: set[int], n: int) -> int:
    """Longest run of consecutive exponents (cyclically) in ``roots``."""
    if len(roots) >= n:
        return n
    best = 0
    for j in roots:
        if (j - 1) % n in roots:
            continue
        run = 0
        while (j + run) % n in roots:
            run += 1
        best = max(best, run)
    return best


@dataclass(frozen=True, eq=False)
class CodeSpec:
    """A cyclic code of length n over GF(2) or GF(2^m).

    ``field`` is the construction field GF(2^m) holding the generator roots;
    ``symbol_field`` is the alphabet of codewords (GF(2) for BCH and RM).
    """

    family: str
    field: Field
    n: int
    k: int
    d_designed: int
    g: CyclicPoly
    h: CyclicPoly
    coset_reps: tuple[int, ...] = ()
    rm: tuple[int, int] | None = None
    roots: frozenset = dc_field(default=frozenset(), repr=False)

    @property
    def symbol_field(self) -> Field:
        return self.g.field

    @property
    def is_binary(self) -> bool:
        return self.symbol_field.is_binary

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @cached_property
    def gen_matrix(self) -> np.ndarray:
        """k x n matrix whose row i holds the coefficients of x^i g(x)."""
        gc = self.g.coeffs
        G = np.zeros((self.k, self.n), dtype=np.int64)
        for i in range(self.k):
            G[i] = np.roll(gc, i)
        G.flags.writeable = False
        return G

    @cached_property
    def gen_columns(self) -> list[int]:
        """Binary codes only: column j of gen_matrix packed as a k-bit int."""
        if not self.is_binary:
            raise TypeError("column masks exist only for binary codes")
        cols = []
        G = self.gen_matrix
        weights = 1 << np.arange(self.k, dtype=object)
        for j in range(self.n):
            cols.append(int(np.sum(G[:, j].astype(object) * weights)))
        return cols

    @cached_property
    def gen_rows(self) -> list[int]:
        """Binary codes only: rows of gen_matrix as n-bit masks."""
        return [shift(self.g, i).mask for i in range(self.k)]

    def to_dict(self) -> dict:
        d = {
            "family": self.family,
            "m": self.field.m,
            "primitive_poly": hex(self.field.primitive_poly),
            "n": self.n,
            "k": self.k,
        }
        if self.family == "puncturedRM":
            d["rm"] = list(self.rm)
        elif self.family == "BCH":
            d["coset_reps"] = list(self.coset_reps)
        return d

    def spec_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    @property
    def label(self) -> str:
        if self.family == "RS":
            return f"RS({self.n},{self.k})"
        return f"BCH({self.n},{self.k},{self.d_designed})"

    def __repr__(self):
        return f"CodeSpec({self.label}, family={self.family}, {self.field})"


def rs_generator(field: Field, n: int | None = None, k: int | None = None) -> CodeSpec:
    """RS(n, k) with g(x) = prod_{j=k}^{n-1} (x - alpha^{-j})."""
    if n is None:
        n = field.n
    if n != field.n:
        raise ParameterOutOfRange(f"RS length must be {field.n}, got {n}")
    if k is None or not 1 <= k <= n:
        raise ParameterOutOfRange(f"need 1 <= k <= {n}, got {k}")
    roots = frozenset(range(k, n))
    g = [1]
    for j in sorted(roots):
        g = _pmul(field, g, [field.alpha(-j), 1])
    xn1 = [1] + [0] * (n - 1) + [1]
    h, rem = _pdivmod(field, xn1, g)
    assert not any(rem)
    gp = _to_ring(field, n, g)
    hp = _to_ring(field, n, h)
    return CodeSpec("RS", field, n, k, n - k + 1, gp, hp, roots=roots)


def _binary_cyclic(field: Field, n: int, roots: set[int]):
    g = [1]
    for j in sorted(roots):
        g = _pmul(field, g, [field.alpha(-j), 1])
    if any(c not in (0, 1) for c in g):
        raise NonBinaryCoefficient("root set is not closed under conjugation")
    xn1 = [1] + [0] * (n - 1) + [1]
    h, rem = _pdivmod(field, xn1, g)
    assert not any(rem) and all(c in (0, 1) for c in h)
    gp = _to_ring(GF2, n, g)
    hp = _to_ring(GF2, n, h)
    return gp, hp


def bch_generator(field: Field, n: int | None, selected_reps, *, family: str = "BCH",
                  rm: tuple[int, int] | None = None, d_designed: int | None = None) -> CodeSpec:
    """Binary BCH code with g(x) the product of the minimal polynomials m_i(x)."""
    if n is None:
        n = field.n
    cosets = cyclotomic_cosets(n, field.m)
    reps = tuple(sorted(set(int(r) for r in selected_reps)))
    for r in reps:
        if r not in cosets:
            raise ParameterOutOfRange(f"{r} is not a cyclotomic coset representative")
    roots = set()
    for r in reps:
        roots.update(cosets[r])
    g, h = _binary_cyclic(field, n, roots)
    k = n - len(roots)
    if k < 1:
        raise ParameterOutOfRange("selection leaves no information symbols")
    if d_designed is None:
        d_designed = _longest_run(roots, n) + 1
    return CodeSpec(family, field, n, k, d_designed, g, h, reps, rm, frozenset(roots))


def narrow_sense_reps(n: int, m: int, delta: int) -> tuple[int, ...]:
    """Coset representatives covering exponents 1..delta-1."""
    cosets = cyclotomic_cosets(n, m)
    owner = {j: r for r, c in cosets.items() for j in c}
    return tuple(sorted({owner[j] for j in range(1, delta)}))


def punctured_rm_generator(r: int, m: int, field: Field | None = None) -> CodeSpec:
    """Cyclic RM(r, m) punctured by one position, as a BCH code.

    Takes every coset representative i > 0 whose binary weight is below m - r.
    """
    if not 0 <= r < m:
        raise ParameterOutOfRange(f"need 0 <= r < m, got r={r}, m={m}")
    if field is None:
        field = make_field(m)
    n = (1 << m) - 1
    reps = [i for i in cyclotomic_cosets(n, m) if i > 0 and bin(i).count("1") < m - r]
    return bch_generator(field, n, reps, family="puncturedRM", rm=(r, m),
                         d_designed=(1 << (m - r)) - 1)


def encode(spec: CodeSpec, info: CyclicPoly) -> CyclicPoly:
    """c(x) = i(x) g(x)."""
    if info.degree() >= spec.k:
        raise InfoTooLong(f"information polynomial degree {info.degree()} >= k={spec.k}")
    return mul_mod(info, spec.g)


def encode_array(spec: CodeSpec, info) -> np.ndarray:
    """Vectorised encoding of rows of info symbols (shape (..., k))."""
    info = np.asarray(info, dtype=np.int64)
    if spec.is_binary:
        return (info @ spec.gen_matrix) & 1
    f = spec.symbol_field
    out = np.zeros(info.shape[:-1] + (spec.n,), dtype=np.int64)
    for i in range(spec.k):
        out ^= f.vmul(info[..., i : i + 1], spec.gen_matrix[i])
    return out


def is_codeword(spec: CodeSpec, c: CyclicPoly) -> bool:
    return mul_mod(c, spec.h).is_zero()


def reencode(spec: CodeSpec, positions, values) -> np.ndarray:
    """The codeword agreeing with ``values`` on ``positions`` (an information set)."""
    positions = list(positions)
    if len(positions) != spec.k:
        raise ValueError("need exactly k positions")
    f = spec.symbol_field
    G = spec.gen_matrix
    A = np.concatenate([G[:, positions].T, np.asarray(values, dtype=np.int64)[:, None]], axis=1)
    R, piv = row_reduce(f, A)
    if len(piv) < spec.k or piv[-1] >= spec.k:
        raise np.linalg.LinAlgError("positions are not an information set")
    return encode_array(spec, R[: spec.k, spec.k])


def code_from_dict(d: dict) -> CodeSpec:
    family = d["family"]
    m = int(d["m"])
    poly = d.get("primitive_poly")
    if isinstance(poly, str):
        poly = int(poly, 16)
    field = make_field(m, poly)
    n = int(d.get("n", field.n))
    if family == "RS":
        return rs_generator(field, n, int(d["k"]))
    if family == "puncturedRM":
        r, mm = d["rm"]
        if mm != m:
            raise ParameterOutOfRange("rm m differs from field m")
        spec = punctured_rm_generator(int(r), m, field)
    elif family == "BCH":
        spec = bch_generator(field, n, d["coset_reps"])
    else:
        raise ValueError(f"unknown code family {family!r}")
    if "k" in d and int(d["k"]) != spec.k:
        raise ParameterOutOfRange(f"spec file says k={d['k']}, construction gives {spec.k}")
    return spec


def load_code_spec(path) -> CodeSpec:
    return code_from_dict(json.loads(Path(path).read_text()))
