"""Finite-field arithmetic over Z_p and GF(2^m) with table-based multiplication.

Elements are referred to by their index in the canonical enumeration of the
field: for a prime field the index is the residue itself, for GF(2^m) the
index is the integer whose binary expansion gives the polynomial coefficients
(bit j <-> x^j).  Every operation accepts plain ints or numpy integer arrays
of indices and is vectorized elementwise.
"""

from __future__ import annotations

import numpy as np

_MAX_Q = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _gf2_polymod(a: int, b: int) -> int:
    """Remainder of carry-less polynomial division of a by b over GF(2)."""
    db = b.bit_length()
    while a.bit_length() >= db and a:
        a ^= b << (a.bit_length() - db)
    return a


def _gf2_irreducible(m: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree m over GF(2).

    Smallest means the smallest integer encoding with bit m set, which orders
    coefficient strings from the leading coefficient down.  Found by trial
    division against every polynomial of degree 1..m//2.
    """
    for cand in range((1 << m) | 1, 1 << (m + 1), 2):  # constant term must be 1
        if all(_gf2_polymod(cand, d) != 0 for d in range(2, 1 << (m // 2 + 1))):
            return cand
    raise RuntimeError(f"no irreducible polynomial of degree {m}")  # unreachable


def _gf2m_mul(a: int, b: int, modulus: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> m) & 1:
            a ^= modulus
    return r


class Field:
    """GF(q) for q prime or q = 2^m (other orders are rejected)."""

    def __init__(self, q: int):
        if not isinstance(q, (int, np.integer)):
            raise ValueError(f"field order must be an integer, got {q!r}")
        q = int(q)
        if q < 2 or q > _MAX_Q:
            raise ValueError(f"field order must satisfy 2 <= q <= {_MAX_Q}, got {q}")
        self.q = q
        if _is_prime(q):
            self.char = q
            self.degree = 1
            self.modulus = None
        elif q & (q - 1) == 0:
            self.char = 2
            self.degree = q.bit_length() - 1
            self.modulus = _gf2_irreducible(self.degree)
        else:
            raise ValueError(
                f"q={q} is neither prime nor a power of two; "
                "only Z_p and GF(2^m) are supported"
            )
        self._build_tables()

    # -------------------- table construction --------------------

    def _raw_mul(self, a: int, b: int) -> int:
        if self.modulus is None:
            return (a * b) % self.q
        return _gf2m_mul(a, b, self.modulus, self.degree)

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        factors = _prime_factors(n)
        for g in range(2, self.q):
            if all(self._raw_pow(g, n // f) != 1 for f in factors):
                return g
        raise RuntimeError("no generator found")  # unreachable: group is cyclic

    def _build_tables(self):
        q = self.q
        self.generator = self._find_generator()
        # LOG[0] is a sentinel >= 2q; EXP is zero everywhere a sentinel can land,
        # so EXP[LOG[a] + LOG[b]] is a branch-free product with correct zeros.
        self._log = np.full(q, 2 * q, dtype=np.int64)
        self._exp = np.zeros(4 * q + 1, dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            self._exp[i] = cur
            self._log[cur] = i
            cur = self._raw_mul(cur, self.generator)
        # mirror one full period so any index LOG[a]+LOG[b] or LOG[a]+(q-1)-LOG[b]
        # of two nonzero operands lands on a filled slot
        self._exp[q - 1 : 2 * q - 2] = self._exp[0 : q - 1]

    # -------------------- arithmetic --------------------

    def add(self, a, b):
        if self.modulus is None:
            return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.q
        return np.asarray(a, dtype=np.int64) ^ np.asarray(b, dtype=np.int64)

    def sub(self, a, b):
        if self.modulus is None:
            return (np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64)) % self.q
        return np.asarray(a, dtype=np.int64) ^ np.asarray(b, dtype=np.int64)

    def neg(self, a):
        if self.modulus is None:
            return (-np.asarray(a, dtype=np.int64)) % self.q
        return np.asarray(a, dtype=np.int64)

    def mul(self, a, b):
        return self._exp[self._log[np.asarray(a, dtype=np.int64)]
                         + self._log[np.asarray(b, dtype=np.int64)]]

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of the zero element")
        return self._exp[(self.q - 1) - self._log[a]]

    def div(self, a, b):
        b = np.asarray(b, dtype=np.int64)
        if np.any(b == 0):
            raise ZeroDivisionError("division by the zero element")
        return self._exp[self._log[np.asarray(a, dtype=np.int64)]
                         + (self.q - 1) - self._log[b]]

    def pow(self, a, e: int):
        """a**e for a scalar integer exponent (vectorized in the base)."""
        a = np.asarray(a, dtype=np.int64)
        e = int(e)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.q == 2:
            return np.ones_like(a) if e == 0 else a.copy()
        er = e % (self.q - 1)
        out = self._exp[(self._log[a] * er) % (self.q - 1)]
        zero = a == 0
        if np.any(zero):
            out = np.where(zero, 0 if e > 0 else 1, out)
        elif e == 0:
            out = np.ones_like(a)
        return out

    def sum(self, arr, axis=None):
        """Field sum reduction along the given axis (int or tuple)."""
        arr = np.asarray(arr, dtype=np.int64)
        if self.modulus is None:
            return arr.sum(axis=axis) % self.q
        return np.bitwise_xor.reduce(arr, axis=axis)

    def powers(self, a, count: int) -> np.ndarray:
        """[a^0, a^1, ..., a^(count-1)] as an index array."""
        a = int(a)
        out = np.empty(count, dtype=np.int64)
        cur = 1
        for i in range(count):
            out[i] = cur
            cur = int(self.mul(cur, a))
        return out

    def poly_eval(self, coeffs, xs):
        """Evaluate sum_i coeffs[i] * x^i (coefficients low order first) at xs."""
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in np.asarray(coeffs, dtype=np.int64)[::-1]:
            acc = self.add(self.mul(acc, xs), c)
        return acc

    # -------------------- enumeration / identity --------------------

    def enumerate_elements(self) -> np.ndarray:
        """Canonical element order: index i is residue i (prime q) or the
        polynomial with coefficient bits of i (q = 2^m)."""
        return np.arange(self.q, dtype=np.int64)

    def binomial_table(self, rows: int, cols: int) -> np.ndarray:
        """Pascal's triangle reduced mod char, as field elements: [a, r] -> C(a, r)."""
        t = np.zeros((rows, cols), dtype=np.int64)
        t[:, 0] = 1
        for a in range(1, rows):
            upto = min(a + 1, cols)
            t[a, 1:upto] = (t[a - 1, 1:upto] + t[a - 1, 0 : upto - 1]) % self.char
        return t

    def __eq__(self, other):
        return isinstance(other, Field) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __repr__(self):
        if self.modulus is None:
            return f"Field(q={self.q})"
        return f"Field(q={self.q}=2^{self.degree}, modulus={bin(self.modulus)})"
