"""Soft-decision list decoding driven by a multiplicity matrix.

Pipeline: interpolate a bivariate polynomial Q that vanishes at every matrix
entry (alpha_j, delta_row) with the prescribed multiplicity, then extract all
Y-roots of degree < k; every codeword whose score S_M(c) satisfies
S_M(c)^2 >= 2(k-1)C(M) is guaranteed to appear in the list.

Monomial order: (1, k-1)-weighted degree, ties broken by lower Y-degree.
Multiplicity of a root is defined through Hasse derivatives, so everything
works in any characteristic.

Two interpolation routes are provided on purpose:

- ``koetter_interpolate``: incremental candidate tracking, one candidate per
  Y-degree, processing the constraints of a point in Hasse order (s outer,
  r inner ascending) so the (X - alpha) bump preserves enforced constraints;
- ``dense_interpolate``: builds the full linear system over the smallest
  weighted-degree-ordered monomial prefix larger than the constraint count
  and extracts the kernel vector with minimal leading monomial.

They must agree on the leading monomial; tests cross-check them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import Field
from .multiplicity import MultiplicityMatrix, build_multiplicity
from .rscode import RSCode, poly_mul, poly_trim


# ---------------- monomial order ----------------

def monomial_basis(cost: int, k: int) -> list:
    """First cost+1 monomials (a, b) in (1, k-1)-weighted-degree order,
    ties broken by lower Y-degree."""
    out = []
    if k == 1:
        # X carries all the weight; every Y power of a given X-degree ties,
        # so the prefix is 1, Y, Y^2, ...
        return [(0, b) for b in range(cost + 1)]
    w = 0
    while len(out) <= cost:
        for b in range(w // (k - 1) + 1):
            out.append((w - (k - 1) * b, b))
            if len(out) > cost:
                break
        w += 1
    return out


def leading_monomial(coeffs: np.ndarray, k: int):
    """(a, b) of the maximal monomial of the support under the order."""
    best = None
    bs, as_ = np.nonzero(coeffs)
    for b, a in zip(bs, as_):
        key = (a + (k - 1) * b, b)
        if best is None or key > best[0]:
            best = (key, (int(a), int(b)))
    return best[1] if best else None


def _trim2d(coeffs: np.ndarray) -> np.ndarray:
    bs, as_ = np.nonzero(coeffs)
    if len(bs) == 0:
        return coeffs[:1, :1]
    return coeffs[: bs.max() + 1, : as_.max() + 1]


@dataclass
class BivariatePoly:
    field: Field
    coeffs: np.ndarray  # [b, a] -> coefficient of Y^b X^a

    @property
    def y_degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def x_degree(self) -> int:
        return self.coeffs.shape[1] - 1

    def weighted_degree(self, k: int) -> int:
        a, b = leading_monomial(self.coeffs, k)
        return a + (k - 1) * b

    def leading(self, k: int):
        return leading_monomial(self.coeffs, k)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def evaluate(self, x: int, y: int) -> int:
        f = self.field
        acc = 0
        for b in range(self.coeffs.shape[0] - 1, -1, -1):
            row_val = int(f.poly_eval(self.coeffs[b], np.asarray([x]))[0])
            acc = int(f.add(f.mul(acc, y), row_val))
        return acc


# ---------------- Koetter's incremental interpolation ----------------

def koetter_interpolate(M: MultiplicityMatrix, code: RSCode) -> BivariatePoly:
    """Minimal-leading-monomial Q vanishing with multiplicity M[v, j] at every
    (alpha_j, v)."""
    f = code.field
    if M.n != code.n or M.q != code.q:
        raise ValueError("multiplicity matrix does not match the code geometry")
    k = code.k
    cost = M.cost()
    basis = monomial_basis(cost, k)
    l = max(b for _, b in basis)
    L = l + 1
    mmax = M.max_entry() if cost else 0

    acap = 8
    G = np.zeros((L, L, acap), dtype=np.int64)
    G[np.arange(L), np.arange(L), 0] = 1
    lead_w = (k - 1) * np.arange(L, dtype=np.int64)
    maxa = np.zeros(L, dtype=np.int64)
    binT = f.binomial_table(max(acap, L) + 1, mmax + 1)

    for j in range(M.n):
        alpha = int(code.alphas[j])
        alpha_pows = f.powers(alpha, acap)
        for row, mult in zip(M.col_rows[j], M.col_mults[j]):
            delta = int(row)
            mult = int(mult)
            delta_pows = f.powers(delta, L)
            for s in range(mult):
                v = np.zeros(L, dtype=np.int64)
                v[s:] = f.mul(binT[s:L, s], delta_pows[: L - s])
                for r in range(mult - s):
                    acur = int(maxa.max()) + 1
                    u = np.zeros(acur, dtype=np.int64)
                    u[r:] = f.mul(binT[r:acur, r], alpha_pows[: acur - r])
                    W = f.mul(v[:, None], u[None, :])
                    D = f.sum(f.mul(G[:, :, :acur], W[None, :, :]), axis=(1, 2))
                    J = np.nonzero(D)[0]
                    if len(J) == 0:
                        continue
                    jstar = J[np.lexsort((J, lead_w[J]))[0]]
                    others = J[J != jstar]
                    if len(others):
                        factors = f.div(D[others], D[jstar])
                        G[others] = f.sub(G[others], f.mul(factors[:, None, None], G[jstar][None]))
                        maxa[others] = np.maximum(maxa[others], maxa[jstar])
                    if maxa[jstar] + 1 >= acap:
                        grow = max(acap // 2, 8)
                        G = np.concatenate(
                            [G, np.zeros((L, L, grow), dtype=np.int64)], axis=2
                        )
                        acap += grow
                        alpha_pows = f.powers(alpha, acap)
                        binT = f.binomial_table(max(acap, L) + 1, mmax + 1)
                    shifted = np.zeros_like(G[jstar])
                    shifted[:, 1:] = G[jstar][:, :-1]
                    G[jstar] = f.sub(shifted, f.mul(alpha, G[jstar]))
                    maxa[jstar] += 1
                    lead_w[jstar] += 1
    winner = int(np.lexsort((np.arange(L), lead_w))[0])
    return BivariatePoly(f, _trim2d(G[winner]))


# ---------------- dense linear-solve oracle ----------------

def dense_interpolate(M: MultiplicityMatrix, code: RSCode) -> BivariatePoly:
    """Same contract as koetter_interpolate, via one homogeneous linear system."""
    f = code.field
    k = code.k
    cost = M.cost()
    basis = monomial_basis(cost, k)
    basis_a = np.array([a for a, _ in basis], dtype=np.int64)
    basis_b = np.array([b for _, b in basis], dtype=np.int64)
    amax = int(basis_a.max())
    bmax = int(basis_b.max())
    mmax = M.max_entry() if cost else 0
    binT = f.binomial_table(max(amax, bmax) + 2, mmax + 1)

    rows = []
    for j in range(M.n):
        alpha = int(code.alphas[j])
        alpha_pows = f.powers(alpha, amax + 1)
        for row, mult in zip(M.col_rows[j], M.col_mults[j]):
            delta_pows = f.powers(int(row), bmax + 1)
            for s in range(int(mult)):
                for r in range(int(mult) - s):
                    ok = (basis_a >= r) & (basis_b >= s)
                    coef = np.zeros(len(basis), dtype=np.int64)
                    aa = basis_a[ok]
                    bb = basis_b[ok]
                    coef[ok] = f.mul(
                        f.mul(binT[aa, r], binT[bb, s]),
                        f.mul(alpha_pows[aa - r], delta_pows[bb - s]),
                    )
                    rows.append(coef)
    if not rows:
        out = np.zeros((1, 1), dtype=np.int64)
        out[0, 0] = 1
        return BivariatePoly(f, out)
    A = np.stack(rows)

    # Row-reduce scanning columns in monomial order; the first non-pivot
    # column yields the kernel vector with minimal leading monomial.
    nrows, ncols = A.shape
    r = 0
    pivots = []
    for c in range(ncols):
        sel = np.nonzero(A[r:, c])[0]
        if len(sel) == 0:
            free = c
            break
        pr = r + sel[0]
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = f.div(A[r], A[r, c])
        hit = np.nonzero(A[:, c])[0]
        hit = hit[hit != r]
        if len(hit):
            A[hit] = f.sub(A[hit], f.mul(A[hit, c][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
        if r == nrows:
            free = c + 1
            break
    x = np.zeros(ncols, dtype=np.int64)
    x[free] = 1
    for row_i, c in enumerate(pivots):
        x[c] = f.neg(A[row_i, free])
    coeffs = np.zeros((bmax + 1, amax + 1), dtype=np.int64)
    keep = x != 0
    coeffs[basis_b[keep], basis_a[keep]] = x[keep]
    return BivariatePoly(f, _trim2d(coeffs))


# ---------------- constraint re-verification by shifting ----------------

def hasse_constraints_ok(Q: BivariatePoly, M: MultiplicityMatrix, code: RSCode) -> bool:
    """Check every multiplicity constraint by expanding Q(X + alpha, Y + delta)
    and inspecting the coefficients with total degree below the multiplicity."""
    f = code.field
    coeffs = Q.coeffs
    B, A = coeffs.shape
    mmax = M.max_entry() if M.cost() else 0
    binT = f.binomial_table(max(A, B) + 1, mmax + 1)
    for j in range(M.n):
        alpha = int(code.alphas[j])
        alpha_pows = f.powers(alpha, A)
        for row, mult in zip(M.col_rows[j], M.col_mults[j]):
            mult = int(mult)
            delta_pows = f.powers(int(row), B)
            # low-order X-shift rows: Lx[r, a] = C(a, r) alpha^(a-r)
            Lx = np.zeros((mult, A), dtype=np.int64)
            for r in range(min(mult, A)):
                Lx[r, r:] = f.mul(binT[r:A, r], alpha_pows[: A - r])
            Ly = np.zeros((mult, B), dtype=np.int64)
            for s in range(min(mult, B)):
                Ly[s, s:] = f.mul(binT[s:B, s], delta_pows[: B - s])
            block1 = f.sum(f.mul(coeffs[:, None, :], Lx[None, :, :]), axis=2)  # [b, r]
            block2 = f.sum(f.mul(Ly[:, :, None], block1[None, :, :]), axis=1)  # [s, r]
            for s in range(mult):
                for r in range(mult - s):
                    if block2[s, r] != 0:
                        return False
    return True


# ---------------- factorization ----------------

def roth_ruckenstein(Q: BivariatePoly, k: int) -> list:
    """All message polynomials f (degree < k, as length-k coefficient arrays)
    with Q(X, f(X)) identically zero.

    Depth-first coefficient extraction capped at depth k; every candidate is
    re-verified by direct substitution before being returned.
    """
    f = Q.field
    q = f.q
    elements = np.arange(q, dtype=np.int64)
    found = set()

    def strip_x(c: np.ndarray) -> np.ndarray:
        nz = np.nonzero(np.any(c != 0, axis=0))[0]
        return c[:, nz[0] :] if len(nz) else c

    def substitute(c: np.ndarray, gamma: int) -> np.ndarray:
        """c(X, X*Y + gamma), rows trimmed back to the original Y-degree."""
        B, A = c.shape
        gamma_pows = f.powers(gamma, B)
        binT = f.binomial_table(B + 1, B + 1)
        out = np.zeros((B, A + B), dtype=np.int64)
        for bp in range(B):
            w = f.mul(binT[bp:B, bp], gamma_pows[: B - bp])  # weight per source row
            rowsum = f.sum(f.mul(w[:, None], c[bp:B, :]), axis=0)
            out[bp, bp : bp + A] = rowsum
        return out

    def recurse(c: np.ndarray, depth: int, prefix: list):
        if not np.any(c[0]):
            found.add(tuple(prefix + [0] * (k - depth)))
        if depth == k:
            return
        c = strip_x(c)
        vals = f.poly_eval(c[:, 0], elements)
        for gamma in elements[vals == 0]:
            recurse(substitute(c, int(gamma)), depth + 1, prefix + [int(gamma)])

    recurse(Q.coeffs, 0, [])

    verified = []
    for tup in sorted(found):
        fpoly = np.array(tup, dtype=np.int64)
        if _compose_is_zero(f, Q.coeffs, fpoly):
            verified.append(fpoly)
    return verified


def _compose_is_zero(f: Field, coeffs: np.ndarray, fpoly: np.ndarray) -> bool:
    """Q(X, f(X)) == 0, by Horner in Y with exact polynomial arithmetic."""
    fp = poly_trim(fpoly)
    acc = coeffs[-1].copy()
    for b in range(coeffs.shape[0] - 2, -1, -1):
        acc = poly_mul(f, poly_trim(acc), fp)
        ln = max(len(acc), coeffs.shape[1])
        widened = np.zeros(ln, dtype=np.int64)
        widened[: len(acc)] = acc
        widened[: coeffs.shape[1]] = f.add(widened[: coeffs.shape[1]], coeffs[b])
        acc = widened
    return not np.any(acc)


# ---------------- list decoding and reconstruction ----------------

@dataclass
class DecodeList:
    messages: list
    codewords: list
    scores: list
    cost: int
    k: int
    interpolation: BivariatePoly

    @property
    def list_size(self) -> int:
        return len(self.codewords)

    @property
    def score_threshold(self) -> float:
        """Scores at or above this are guaranteed to be in the list."""
        return math.sqrt(2 * (self.k - 1) * self.cost)

    def meets_guarantee(self, score: int) -> bool:
        """score >= sqrt(2(k-1)C), compared exactly in integers."""
        return score >= 0 and score * score >= 2 * (self.k - 1) * self.cost

    def contains(self, codeword) -> bool:
        codeword = np.asarray(codeword, dtype=np.int64)
        return any(np.array_equal(cw, codeword) for cw in self.codewords)


def kv_decode(M: MultiplicityMatrix, code: RSCode) -> DecodeList:
    Q = koetter_interpolate(M, code)
    messages, codewords, scores = [], [], []
    for fpoly in roth_ruckenstein(Q, code.k):
        cw = code.encode(fpoly)
        if any(np.array_equal(cw, c) for c in codewords):
            continue
        messages.append(fpoly)
        codewords.append(cw)
        scores.append(M.score(cw))
    return DecodeList(messages, codewords, scores, M.cost(), code.k, Q)


@dataclass
class ReconstructionResult:
    status: str  # "ok" or "fail"
    codeword: np.ndarray | None
    message: np.ndarray | None
    list_size: int
    cost: int
    winner_score: int

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def reconstruct(readset, code: RSCode, mu: int = 1) -> ReconstructionResult:
    """Build the multiplicity matrix, list-decode, and return the unique
    highest-scoring candidate; ties and empty lists are failures."""
    M = build_multiplicity(readset, mu)
    dl = kv_decode(M, code)
    if dl.list_size == 0:
        return ReconstructionResult("fail", None, None, 0, dl.cost, 0)
    scores = np.asarray(dl.scores)
    best = int(scores.max())
    winners = np.nonzero(scores == best)[0]
    if len(winners) != 1:
        return ReconstructionResult("fail", None, None, dl.list_size, dl.cost, best)
    w = int(winners[0])
    return ReconstructionResult(
        "ok", dl.codewords[w], dl.messages[w], dl.list_size, dl.cost, best
    )
