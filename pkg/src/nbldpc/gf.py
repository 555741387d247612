"""Arithmetic in GF(2^p), 2 <= p <= 8.

Elements are labelled by the integers ``0 .. q-1`` whose binary expansion is
the polynomial basis representation.  Addition is XOR; multiplication goes
through log/antilog tables built from a primitive polynomial.
"""

from __future__ import annotations

import numpy as np

# Conventional minimal-weight primitive polynomials, bit k <-> x^k.
DEFAULT_PRIMITIVE_POLYS = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
}


def clmul_mod(a: int, b: int, poly: int, p: int) -> int:
    """Carry-less multiply of ``a`` and ``b`` reduced modulo ``poly``.

    Bit-serial shift-and-add; slow but independent of the table path, so
    it doubles as the test oracle for :meth:`GaloisField.mul`.
    """
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> p & 1:
            a ^= poly
    return result


class GaloisField:
    """The field GF(2^p) with precomputed lookup tables.

    Attributes
    ----------
    p : int
        Extension degree (bits per symbol).
    q : int
        Field order ``2**p``.
    prim_poly : int
        Primitive polynomial as a (p+1)-bit integer.
    log_table, antilog_table : ndarray
        ``antilog_table[k] = x^k`` for ``k < q-1``; ``log_table[d]`` is the
        discrete log of nonzero ``d`` (``log_table[0]`` is unused, set to -1).
    mul_table, div_table : ndarray
        Full ``q x q`` product and quotient tables (``div_table[a, 0]`` is 0
        and must not be relied on).
    inv_table : ndarray
        Multiplicative inverses; ``inv_table[0]`` is 0 and meaningless.
    """

    def __init__(self, p: int, prim_poly: int | None = None):
        if not 2 <= p <= 8:
            raise ValueError(f"extension degree p must be in [2, 8], got {p}")
        if prim_poly is None:
            prim_poly = DEFAULT_PRIMITIVE_POLYS[p]
        if prim_poly >> p != 1:
            raise ValueError(
                f"polynomial {prim_poly:#b} does not have degree {p}")
        q = 1 << p
        antilog = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            if x == 0 or log[x] != -1:
                raise ValueError(
                    f"polynomial {prim_poly:#b} is not primitive for p={p}")
            antilog[k] = x
            log[x] = k
            x <<= 1
            if x >> p & 1:
                x ^= prim_poly
        if x != 1:
            raise ValueError(
                f"polynomial {prim_poly:#b} is not primitive for p={p}")

        self.p = p
        self.q = q
        self.prim_poly = prim_poly
        self.log_table = log
        self.antilog_table = antilog

        nz = np.arange(1, q)
        lg = log[nz]
        mul = np.zeros((q, q), dtype=np.int64)
        mul[1:, 1:] = antilog[(lg[:, None] + lg[None, :]) % (q - 1)]
        div = np.zeros((q, q), dtype=np.int64)
        div[1:, 1:] = antilog[(lg[:, None] - lg[None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = antilog[(-lg) % (q - 1)]
        for t in (log, antilog, mul, div, inv):
            t.setflags(write=False)
        self.mul_table = mul
        self.div_table = div
        self.inv_table = inv

    def __repr__(self):
        return f"GaloisField(p={self.p}, prim_poly={self.prim_poly:#b})"

    def __eq__(self, other):
        return (isinstance(other, GaloisField) and self.p == other.p
                and self.prim_poly == other.prim_poly)

    def __hash__(self):
        return hash((self.p, self.prim_poly))

    def _check(self, *elems):
        for e in elems:
            if not 0 <= e < self.q:
                raise ValueError(f"{e} is not an element of GF({self.q})")

    @staticmethod
    def add(a, b):
        return a ^ b

    def mul(self, a, b):
        """Product; works elementwise on integer arrays too."""
        if np.ndim(a) == 0 and np.ndim(b) == 0:
            self._check(a, b)
            return int(self.mul_table[a, b])
        return self.mul_table[a, b]

    def inv(self, a):
        if np.ndim(a) == 0:
            self._check(a)
            if a == 0:
                raise ZeroDivisionError("0 has no inverse in a field")
            return int(self.inv_table[a])
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse in a field")
        return self.inv_table[a]

    def div(self, a, b):
        if np.ndim(b) == 0:
            if b == 0:
                raise ZeroDivisionError("division by zero in GF(q)")
        elif np.any(np.asarray(b) == 0):
            raise ZeroDivisionError("division by zero in GF(q)")
        return self.mul(a, self.inv(b))

    def bits(self, symbols):
        """Binary expansion, LSB first: shape ``symbols.shape + (p,)``."""
        symbols = np.asarray(symbols)
        return (symbols[..., None] >> np.arange(self.p)) & 1


def gf_build(p: int, prim_poly: int | None = None) -> GaloisField:
    return GaloisField(p, prim_poly)


def gf_add(a, b):
    return a ^ b


def gf_mul(gf: GaloisField, a, b):
    return gf.mul(a, b)


def gf_inv(gf: GaloisField, a):
    return gf.inv(a)


def popcount(x):
    """Number of set bits, elementwise (labels are < 256)."""
    x = np.asarray(x, dtype=np.int64)
    return _POPCOUNT8[x]


_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)
