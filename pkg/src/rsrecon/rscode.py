"""Reed-Solomon evaluation codes.

A codeword is (f(a_1), ..., f(a_n)) for a message polynomial f of degree < k
over GF(q), with distinct evaluation points a_j.  The default evaluation
points are the first n elements of the canonical field enumeration.

Decoders:

- ``decode_errors_erasures``: bounded-distance errors-and-erasures decoding
  (rational interpolation on the unerased coordinates), correcting any
  pattern with 2e + f <= n - k.  Never returns a codeword outside that
  radius: the candidate is re-checked against the received word.
- ``majority_decode``: per-position plurality vote over repeated reads
  (a position is decided only on a unique plurality with count >= 2,
  otherwise erased), followed by errors-and-erasures decoding.
"""

from __future__ import annotations

import numpy as np

from .fields import Field


# ---------------- polynomial utilities ----------------

def poly_trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if len(nz) else c[:1]


def poly_add(f: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = f.add(out[: len(b)], b)
    return out


def poly_mul(f: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, ai in enumerate(a):
        if ai:
            out[i : i + len(b)] = f.add(out[i : i + len(b)], f.mul(ai, b))
    return out


def poly_divmod(f: Field, num: np.ndarray, den: np.ndarray):
    den = poly_trim(np.asarray(den, dtype=np.int64))
    if len(den) == 1 and den[0] == 0:
        raise ZeroDivisionError("polynomial division by zero")
    rem = np.asarray(num, dtype=np.int64).copy()
    dd = len(den) - 1
    if len(rem) - 1 < dd:
        return np.zeros(1, dtype=np.int64), poly_trim(rem)
    quo = np.zeros(len(rem) - dd, dtype=np.int64)
    inv_lead = f.inv(den[-1])
    for i in range(len(rem) - 1, dd - 1, -1):
        if rem[i]:
            c = int(f.mul(rem[i], inv_lead))
            quo[i - dd] = c
            rem[i - dd : i + 1] = f.sub(rem[i - dd : i + 1], f.mul(c, den))
    return quo, poly_trim(rem)


def lagrange_interpolate(f: Field, xs, ys) -> np.ndarray:
    """Unique polynomial of degree < len(xs) through the given points."""
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    acc = np.zeros(1, dtype=np.int64)
    for i in range(len(xs)):
        if ys[i] == 0:
            continue
        basis = np.array([1], dtype=np.int64)
        denom = 1
        for j in range(len(xs)):
            if j == i:
                continue
            # basis *= (x - xs[j]);  denom *= (xs[i] - xs[j])
            basis = poly_add(
                f,
                np.concatenate([[0], basis]),
                f.mul(f.neg(xs[j]), basis),
            )
            denom = int(f.mul(denom, f.sub(xs[i], xs[j])))
        acc = poly_add(f, acc, f.mul(int(f.div(ys[i], denom)), basis))
    return poly_trim(acc)


def gauss_solve(f: Field, A: np.ndarray, b: np.ndarray):
    """One solution of A x = b over the field (free variables set to 0),
    or None when the system is inconsistent."""
    rows, cols = A.shape
    M = np.concatenate([A.astype(np.int64), b.reshape(-1, 1).astype(np.int64)], axis=1)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        sel = np.nonzero(M[r:, c])[0]
        if len(sel) == 0:
            continue
        pr = r + sel[0]
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        M[r] = f.div(M[r], M[r, c])
        hit = np.nonzero(M[:, c])[0]
        hit = hit[hit != r]
        if len(hit):
            M[hit] = f.sub(M[hit], f.mul(M[hit, c][:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    if r < rows and np.any(M[r:, -1]):
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = M[row, -1]
    return x


# ---------------- the code ----------------

class RSCode:
    def __init__(self, field: Field, n: int, k: int, alphas=None):
        if not (1 <= k <= n <= field.q):
            raise ValueError(f"need 1 <= k <= n <= q, got k={k}, n={n}, q={field.q}")
        self.field = field
        self.n = int(n)
        self.k = int(k)
        if alphas is None:
            alphas = np.arange(n, dtype=np.int64)
        else:
            alphas = np.asarray(alphas, dtype=np.int64)
            if len(alphas) != n or len(np.unique(alphas)) != n:
                raise ValueError("evaluation points must be n distinct elements")
            if alphas.min() < 0 or alphas.max() >= field.q:
                raise ValueError("evaluation points outside the field")
        self.alphas = alphas

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def distance(self) -> int:
        return self.n - self.k + 1

    @property
    def rate(self) -> float:
        return self.k / self.n

    def __repr__(self):
        return f"RSCode(q={self.q}, n={self.n}, k={self.k})"

    def encode(self, message) -> np.ndarray:
        message = np.asarray(message, dtype=np.int64)
        if message.shape != (self.k,):
            raise ValueError(f"message must have length k={self.k}")
        if message.min(initial=0) < 0 or message.max(initial=0) >= self.q:
            raise ValueError("message symbols outside the field")
        return self.field.poly_eval(message, self.alphas)

    def _pad(self, coeffs: np.ndarray) -> np.ndarray:
        out = np.zeros(self.k, dtype=np.int64)
        out[: len(coeffs)] = coeffs
        return out

    def decode_errors_erasures(self, word, erasures=()):
        """Decode under e substitution errors and f erasures with 2e+f <= n-k.

        Returns (codeword, message) or None.  The returned codeword always
        satisfies 2e' + f <= n - k against the input, regardless of how the
        input was produced.
        """
        f = self.field
        word = np.asarray(word, dtype=np.int64)
        if word.shape != (self.n,):
            raise ValueError(f"received word must have length n={self.n}")
        erased = np.zeros(self.n, dtype=bool)
        for pos in erasures:
            erased[pos] = True
        keep = np.nonzero(~erased)[0]
        n_kept = len(keep)
        n_erased = self.n - n_kept
        if n_kept < self.k:
            return None
        t = (n_kept - self.k) // 2
        xs = self.alphas[keep]
        ys = word[keep]

        # N(x) - y*E(x) = 0 at every kept point, deg N < k+t, E monic of degree t:
        # unknowns [n_0..n_{k+t-1}, e_0..e_{t-1}], rhs y*x^t.
        xpow = np.ones((n_kept, self.k + t), dtype=np.int64)
        for j in range(1, self.k + t):
            xpow[:, j] = f.mul(xpow[:, j - 1], xs)
        A = np.concatenate([xpow, f.neg(f.mul(ys[:, None], xpow[:, :t]))], axis=1)
        xt = f.mul(xpow[:, t - 1], xs) if t > 0 else np.ones(n_kept, dtype=np.int64)
        rhs = f.mul(ys, xt)
        sol = gauss_solve(f, A, rhs)
        if sol is None:
            return None
        num = poly_trim(sol[: self.k + t])
        den = np.concatenate([sol[self.k + t :], [1]])
        quo, rem = poly_divmod(f, num, den)
        if np.any(rem):
            return None
        if len(quo) > self.k:
            return None
        message = self._pad(quo)
        codeword = self.encode(message)
        n_err = int(np.count_nonzero(codeword[keep] != ys))
        if 2 * n_err + n_erased > self.n - self.k:
            return None
        return codeword, message

    def majority_decode(self, reads):
        """Plurality-vote hard decision over reads (K x n), then
        errors-and-erasures decoding.  Returns (codeword, message) or None."""
        symbols, erasures = majority_vote(reads, self.q)
        return self.decode_errors_erasures(symbols, erasures)


def majority_vote(reads, q: int):
    """Per-position plurality with erasures.

    A position is decided when a unique most-frequent symbol with count >= 2
    exists; otherwise it is erased.  Returns (symbols, erasure_positions);
    erased entries of ``symbols`` are 0 placeholders.
    """
    reads = np.asarray(reads, dtype=np.int64)
    if reads.ndim != 2:
        raise ValueError("reads must be a K x n array")
    n = reads.shape[1]
    symbols = np.zeros(n, dtype=np.int64)
    erasures = []
    for j in range(n):
        vals, cnts = np.unique(reads[:, j], return_counts=True)
        top = cnts.max()
        if top >= 2 and np.count_nonzero(cnts == top) == 1:
            symbols[j] = vals[np.argmax(cnts)]
        else:
            erasures.append(j)
    return symbols, erasures
