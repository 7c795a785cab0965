"""Polynomials in F_{2^m}[x]/(x^n - 1).

Binary polynomials are kept bit-packed in a Python int (bit i is the
coefficient of x^i) so products and shifts are word-level rotate/XOR.  Over
larger fields the coefficients are a tuple of field elements.
"""

from __future__ import annotations

import re

import numpy as np

from .galois import Field, make_field

__all__ = [
    "CyclicPoly",
    "LengthMismatch",
    "ZeroPolynomial",
    "format_poly",
    "mul_mod",
    "parse_poly",
    "rotate_mask",
    "shift",
    "square_map",
]

GF2 = make_field(1)


class LengthMismatch(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


def rotate_mask(mask: int, s: int, n: int) -> int:
    """Cyclic left rotation of an n-bit mask by s, i.e. x^s * a(x)."""
    s %= n
    if s == 0:
        return mask
    full = (1 << n) - 1
    return ((mask << s) | (mask >> (n - s))) & full


class CyclicPoly:
    """Immutable element of F_{2^m}[x]/(x^n - 1)."""

    __slots__ = ("field", "n", "_mask", "_coeffs")

    def __init__(self, field: Field, n: int, *, mask: int | None = None, coeffs=None):
        if n < 1:
            raise ValueError("ring length must be positive")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        if field.is_binary:
            if mask is None:
                mask = 0
                if coeffs is not None:
                    c = np.asarray(coeffs, dtype=np.int64)
                    if len(c) != n:
                        raise LengthMismatch(f"expected {n} coefficients, got {len(c)}")
                    for i in np.flatnonzero(c & 1):
                        mask |= 1 << int(i)
            elif mask >> n:
                raise ValueError("mask has bits beyond x^(n-1)")
            object.__setattr__(self, "_mask", int(mask))
            object.__setattr__(self, "_coeffs", None)
        else:
            if coeffs is None:
                coeffs = [0] * n
                if mask:
                    raise ValueError("mask form is only for binary polynomials")
            coeffs = tuple(int(v) for v in coeffs)
            if len(coeffs) != n:
                raise LengthMismatch(f"expected {n} coefficients, got {len(coeffs)}")
            if any(v < 0 or v >= field.q for v in coeffs):
                raise ValueError("coefficient outside the field")
            object.__setattr__(self, "_mask", None)
            object.__setattr__(self, "_coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CyclicPoly is immutable")

    # -- construction ----------------------------------------------------

    @classmethod
    def zero(cls, field: Field, n: int) -> "CyclicPoly":
        return cls(field, n)

    @classmethod
    def binary(cls, n: int, support=(), mask: int | None = None) -> "CyclicPoly":
        if mask is None:
            mask = 0
            for i in support:
                mask ^= 1 << (int(i) % n)
        return cls(GF2, n, mask=mask)

    @classmethod
    def monomial(cls, field: Field, n: int, e: int, value: int = 1) -> "CyclicPoly":
        coeffs = [0] * n
        coeffs[e % n] = value
        return cls(field, n, coeffs=coeffs)

    @classmethod
    def from_terms(cls, field: Field, n: int, terms) -> "CyclicPoly":
        """Sum of ``value * x^e`` over ``(e, value)`` pairs, exponents taken mod n."""
        coeffs = [0] * n
        for e, v in terms:
            coeffs[e % n] ^= int(v)
        return cls(field, n, coeffs=coeffs)

    # -- views -----------------------------------------------------------

    @property
    def mask(self) -> int:
        if self._mask is None:
            raise TypeError("mask view only exists for binary polynomials")
        return self._mask

    @property
    def coeffs(self) -> np.ndarray:
        if self._mask is not None:
            bits = np.zeros(self.n, dtype=np.int64)
            for i in self.support:
                bits[i] = 1
            return bits
        return np.array(self._coeffs, dtype=np.int64)

    @property
    def support(self) -> list[int]:
        if self._mask is not None:
            out, m, i = [], self._mask, 0
            while m:
                low = m & -m
                i = low.bit_length() - 1
                out.append(i)
                m ^= low
            return out
        return [i for i, v in enumerate(self._coeffs) if v]

    @property
    def weight(self) -> int:
        if self._mask is not None:
            return self._mask.bit_count()
        return sum(1 for v in self._coeffs if v)

    def is_zero(self) -> bool:
        return self.weight == 0

    def __getitem__(self, i: int) -> int:
        i %= self.n
        if self._mask is not None:
            return (self._mask >> i) & 1
        return self._coeffs[i]

    def degree(self) -> int:
        s = self.support
        return max(s) if s else -1

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "CyclicPoly"):
        if self.n != other.n or self.field != other.field:
            raise LengthMismatch(
                f"ring mismatch: n={self.n}/{other.n}, {self.field}/{other.field}"
            )

    def __add__(self, other: "CyclicPoly") -> "CyclicPoly":
        self._check(other)
        if self._mask is not None:
            return CyclicPoly(self.field, self.n, mask=self._mask ^ other._mask)
        return CyclicPoly(
            self.field, self.n,
            coeffs=[a ^ b for a, b in zip(self._coeffs, other._coeffs)],
        )

    __sub__ = __add__

    def __mul__(self, other: "CyclicPoly") -> "CyclicPoly":
        return mul_mod(self, other)

    def scale(self, c: int) -> "CyclicPoly":
        if self._mask is not None:
            return self if c & 1 else CyclicPoly(self.field, self.n)
        return CyclicPoly(
            self.field, self.n, coeffs=self.field.vmul(self.coeffs, c)
        )

    def __eq__(self, other):
        if not isinstance(other, CyclicPoly):
            return NotImplemented
        return (
            self.n == other.n
            and self.field == other.field
            and self._mask == other._mask
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((self.n, self.field, self._mask, self._coeffs))

    def __repr__(self):
        return f"CyclicPoly(n={self.n}, {format_poly(self)})"


def mul_mod(a: CyclicPoly, b: CyclicPoly) -> CyclicPoly:
    """a(x) * b(x) mod (x^n - 1)."""
    a._check(b)
    n = a.n
    if a._mask is not None:
        if a.weight > b.weight:
            a, b = b, a
        out, bm = 0, b._mask
        for i in a.support:
            out ^= rotate_mask(bm, i, n)
        return CyclicPoly(a.field, n, mask=out)
    field = a.field
    bc = b.coeffs
    out = np.zeros(n, dtype=np.int64)
    for i, ai in enumerate(a._coeffs):
        if ai:
            out ^= field.vmul(ai, np.roll(bc, i))
    return CyclicPoly(field, n, coeffs=out)


def shift(a: CyclicPoly, s: int) -> CyclicPoly:
    """x^s * a(x) mod (x^n - 1); s may be negative."""
    s %= a.n
    if a._mask is not None:
        return CyclicPoly(a.field, a.n, mask=rotate_mask(a._mask, s, a.n))
    return CyclicPoly(a.field, a.n, coeffs=np.roll(a.coeffs, s))


def square_map(a: CyclicPoly) -> CyclicPoly:
    """a(x)^2 mod (x^n - 1).  In characteristic 2 this sends a_i x^i to a_i^2 x^(2i)."""
    n = a.n
    if a._mask is not None:
        out = 0
        for i in a.support:
            out ^= 1 << ((2 * i) % n)
        return CyclicPoly(a.field, n, mask=out)
    out = [0] * n
    for i, v in enumerate(a._coeffs):
        if v:
            out[(2 * i) % n] ^= a.field.mul(v, v)
    return CyclicPoly(a.field, n, coeffs=out)


_TERM = re.compile(
    r"^(?:(?:a\^(?P<ce>-?\d+)|(?P<cv>\d+))\s*\*?\s*)?"
    r"(?:x(?:\^(?P<e>\d+))?)?$"
)


def parse_poly(text: str, n: int, field: Field = GF2) -> CyclicPoly:
    """Parse ``"x^49+x^37+...+1"``.

    Over GF(2^m) a term may carry a coefficient as ``a^k`` (alpha power) or a
    plain integer element, e.g. ``"a^3*x^7 + x^8 + a^11 x^9"``.
    """
    coeffs = [0] * n
    for raw in text.replace(" ", "").split("+"):
        if not raw:
            continue
        mt = _TERM.match(raw)
        if mt is None or raw in ("*",):
            raise ValueError(f"cannot parse term {raw!r}")
        has_x = "x" in raw
        e = int(mt["e"]) if mt["e"] is not None else (1 if has_x else 0)
        if mt["ce"] is not None:
            c = field.alpha(int(mt["ce"]))
        elif mt["cv"] is not None:
            c = int(mt["cv"])
            if not has_x and c == 0:
                continue
        else:
            c = 1
        coeffs[e % n] ^= c
    return CyclicPoly(field, n, coeffs=coeffs)


def format_poly(p: CyclicPoly) -> str:
    """Inverse of :func:`parse_poly`, highest exponent first."""
    terms = []
    for i in reversed(p.support):
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        c = p[i]
        if c != 1:
            coef = f"a^{int(p.field.log[c])}"
            mono = coef if i == 0 else f"{coef}*{mono}"
        terms.append(mono)
    return "+".join(terms) if terms else "0"
