"""Arithmetic in GF(2^7) with the primitive polynomial x^7 + x^3 + 1.

Elements are 7-bit integers in polynomial basis.  Table lookups are exposed
as numpy arrays so callers can vectorise; :class:`GF128` wraps a single
element for readable scalar code and tests.
"""
from __future__ import annotations

import numpy as np

M = 7
ORDER = (1 << M) - 1  # 127, multiplicative group order
PRIM_POLY = 0b10001001  # x^7 + x^3 + 1


def _build_tables():
    exp = np.zeros(2 * ORDER, dtype=np.int64)
    log = np.full(ORDER + 1, -1, dtype=np.int64)
    v = 1
    for i in range(ORDER):
        exp[i] = v
        log[v] = i
        v <<= 1
        if v & (1 << M):
            v ^= PRIM_POLY
    exp[ORDER:] = exp[:ORDER]
    return exp, log


EXP, LOG = _build_tables()
EXP.setflags(write=False)
LOG.setflags(write=False)


def mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return int(EXP[LOG[a] + LOG[b]])


def div(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by zero in GF(128)")
    if a == 0:
        return 0
    return int(EXP[(LOG[a] - LOG[b]) % ORDER])


def inv(a: int) -> int:
    return div(1, a)


def power(a: int, e: int) -> int:
    if a == 0:
        return 0 if e != 0 else 1
    return int(EXP[(LOG[a] * e) % ORDER])


def alpha_pow(e) -> np.ndarray | int:
    """``beta^e`` for the primitive element ``beta``; vectorised over ``e``."""
    r = EXP[np.mod(e, ORDER)]
    return int(r) if np.ndim(r) == 0 else r


def vmul(a, b) -> np.ndarray:
    """Element-wise product of integer arrays of field elements."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = EXP[(LOG[a] + LOG[b]) % ORDER]
    return np.where((a == 0) | (b == 0), 0, out)


def vdiv(a, b) -> np.ndarray:
    """Element-wise ``a / b``; entries with ``b == 0`` come back as 0."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = EXP[(LOG[a] - LOG[b]) % ORDER]
    return np.where((a == 0) | (b == 0), 0, out)


def vpow(a, e: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    out = EXP[(LOG[a] * e) % ORDER]
    return np.where(a == 0, 0 if e else 1, out)


def element_order(a: int) -> int:
    if a == 0:
        raise ValueError("zero has no multiplicative order")
    v, n = a, 1
    while v != 1:
        v = mul(v, a)
        n += 1
    return n


class GF128:
    """A single element of GF(2^7)."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        if not 0 <= int(value) <= ORDER:
            raise ValueError(f"{value} is not a 7-bit field element")
        self.value = int(value)

    def __add__(self, other):
        return GF128(self.value ^ GF128._v(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        return GF128(mul(self.value, GF128._v(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GF128(div(self.value, GF128._v(other)))

    def __pow__(self, e: int):
        return GF128(power(self.value, e))

    def inverse(self):
        return GF128(inv(self.value))

    def order(self) -> int:
        return element_order(self.value)

    def __eq__(self, other):
        if isinstance(other, GF128):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF128({self.value:#04x})"

    @staticmethod
    def _v(x) -> int:
        return x.value if isinstance(x, GF128) else int(x)


def minimal_polynomial(i: int) -> np.ndarray:
    """Binary minimal polynomial of ``beta^i``, ascending coefficients."""
    coset = []
    j = i % ORDER
    while j not in coset:
        coset.append(j)
        j = (2 * j) % ORDER
    poly = [1]
    for j in coset:
        root = alpha_pow(j)
        nxt = [0] * (len(poly) + 1)
        for d, cf in enumerate(poly):
            nxt[d + 1] ^= cf
            nxt[d] ^= mul(cf, root)
        poly = nxt
    if any(c not in (0, 1) for c in poly):
        raise ArithmeticError("minimal polynomial is not binary")
    return np.array(poly, dtype=np.uint8)
