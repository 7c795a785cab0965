"""Arithmetic in GF(2^m), m <= 16, via exp/log tables of a primitive element.

Elements are plain integers: the bitmask of the residue polynomial modulo the
primitive polynomial.  Zero has no logarithm and is handled outside the tables.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "DEFAULT_PRIMITIVE_POLYS",
    "DegreeMismatch",
    "DivisionByZero",
    "Field",
    "FieldError",
    "NonPrimitivePolynomial",
    "f_inv",
    "f_mul",
    "f_pow",
    "make_field",
]

# Low-weight primitive polynomials, trinomials where one exists.
DEFAULT_PRIMITIVE_POLYS = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


class FieldError(ValueError):
    pass


class NonPrimitivePolynomial(FieldError):
    pass


class DegreeMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class Field:
    """GF(2^m) with primitive element alpha (the class of x).

    ``exp[i] = alpha^i`` for ``0 <= i < n`` and ``log`` is its inverse on the
    nonzero elements; ``log[0]`` holds -1 as a sentinel.  Instances are
    immutable after construction.
    """

    __slots__ = ("m", "primitive_poly", "n", "q", "exp", "log", "_exp2")

    def __init__(self, m: int, primitive_poly: int):
        if not 1 <= m <= 16:
            raise FieldError(f"extension degree must be in 1..16, got {m}")
        if primitive_poly.bit_length() - 1 != m:
            raise DegreeMismatch(
                f"polynomial {primitive_poly:#x} does not have degree {m}"
            )
        q = 1 << m
        n = q - 1
        exp = np.zeros(n, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        value = 1
        for i in range(n):
            if log[value] != -1:
                raise NonPrimitivePolynomial(
                    f"{primitive_poly:#x}: alpha^{i} repeats an earlier power"
                )
            exp[i] = value
            log[value] = i
            value <<= 1
            if value & q:
                value ^= primitive_poly
        if value != 1:
            raise NonPrimitivePolynomial(
                f"{primitive_poly:#x}: alpha^{n} != 1"
            )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "primitive_poly", primitive_poly)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "q", q)
        exp.flags.writeable = False
        log.flags.writeable = False
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "log", log)
        # doubled table lets vmul skip the modulo
        exp2 = np.concatenate([exp, exp])
        exp2.flags.writeable = False
        object.__setattr__(self, "_exp2", exp2)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __repr__(self):
        return f"Field(m={self.m}, primitive_poly={self.primitive_poly:#x})"

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.m == other.m
            and self.primitive_poly == other.primitive_poly
        )

    def __hash__(self):
        return hash((self.m, self.primitive_poly))

    @property
    def is_binary(self) -> bool:
        return self.m == 1

    def alpha(self, i: int = 1) -> int:
        """alpha^i for any integer i (negative allowed)."""
        return int(self.exp[i % self.n])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % self.n])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp[(-self.log[a]) % self.n])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp[(self.log[a] * e) % self.n])

    def vmul(self, a, b) -> np.ndarray:
        """Elementwise product of integer arrays (broadcasting)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp2[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.exp[(-self.log[a]) % self.n]


def make_field(m: int, primitive_poly: int | None = None) -> Field:
    """Build GF(2^m); ``primitive_poly`` defaults to the table entry for m."""
    if primitive_poly is None:
        if m not in DEFAULT_PRIMITIVE_POLYS:
            raise FieldError(f"no default primitive polynomial for m={m}")
        primitive_poly = DEFAULT_PRIMITIVE_POLYS[m]
    return Field(m, primitive_poly)


def f_mul(field: Field, a: int, b: int) -> int:
    return field.mul(a, b)


def f_inv(field: Field, a: int) -> int:
    return field.inv(a)


def f_pow(field: Field, a: int, e: int) -> int:
    return field.pow(a, e)
