"""Independent brute-force oracles.

Everything here is written the slow, obvious way on purpose: enumeration
over all read tuples, naive composition sums, exhaustive message scans.
Production code must match these on small instances.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np


def single_read_prob(q: int, p: float, x: int, y: int) -> float:
    return (1.0 - p) if y == x else p / (q - 1)


def read_tuple_prob(q: int, p: float, x: int, reads) -> float:
    out = 1.0
    for y in reads:
        out *= single_read_prob(q, p, x, y)
    return out


def classify_tuple(sent: int, reads) -> str:
    """Outcome of one position given its K reads (independent restatement)."""
    counts = Counter(reads)
    top = max(counts.values())
    c = counts.get(sent, 0)
    if c == top and top >= 2 and list(counts.values()).count(top) == 1:
        return "success"
    if top == 1 and c == 1:
        return "erasure_a"
    if top == 1 and c == 0:
        return "erasure_b"
    return "error"


def pmf_by_enumeration(q: int, K: int, p: float) -> tuple[float, float, float, float]:
    """Weighted enumeration over all q^K read tuples for a fixed sent symbol."""
    sent = 0
    acc = {"success": 0.0, "erasure_a": 0.0, "erasure_b": 0.0, "error": 0.0}
    for reads in itertools.product(range(q), repeat=K):
        acc[classify_tuple(sent, reads)] += read_tuple_prob(q, p, sent, reads)
    return (acc["success"], acc["erasure_a"], acc["erasure_b"], acc["error"])


def output_entropy_enumeration(q: int, K: int, p: float) -> float:
    """H(Y) in nats for uniform input, by summing over all q^K outputs."""
    h = 0.0
    for reads in itertools.product(range(q), repeat=K):
        prob = sum(read_tuple_prob(q, p, x, reads) for x in range(q)) / q
        if prob > 0.0:
            h -= prob * math.log(prob)
    return h


def cond_entropy_enumeration(q: int, K: int, p: float) -> float:
    """H(Y|X) in nats; by symmetry the inner sum is the same for every x."""
    h = 0.0
    for reads in itertools.product(range(q), repeat=K):
        prob = read_tuple_prob(q, p, 0, reads)
        if prob > 0.0:
            h -= prob * math.log(prob)
    return h


def capacity_enumeration(q: int, K: int, p: float) -> float:
    num = output_entropy_enumeration(q, K, p) - cond_entropy_enumeration(q, K, p)
    return num / math.log(q)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def phi_naive(q: int, K: int, p: float) -> float:
    """The composition-sum entropy term, enumerated without grouping."""
    w = (1.0 - p) / p * (q - 1)
    total = 0.0
    for comp in _compositions(K, q):
        mult = math.factorial(K)
        for r in comp:
            mult //= math.factorial(r)
        t = sum(w**r for r in comp)
        total += mult * t * math.log(t)
    return total


def count_words_enumeration(s: int, j: int, m: int) -> int:
    """Words of length s over m letters with every letter used < j times."""
    hits = 0
    for word in itertools.product(range(m), repeat=s):
        if all(c < j for c in Counter(word).values()):
            hits += 1
    return hits


def exhaustive_codeword_scores(code, matrix):
    """(message, codeword, score) for every message, by full scan."""
    q, k = code.q, code.k
    out = []
    for msg in itertools.product(range(q), repeat=k):
        message = np.array(msg, dtype=np.int64)
        codeword = code.encode(message)
        out.append((message, codeword, int(matrix.score(codeword))))
    return out


def guaranteed_codewords(code, matrix):
    """All codewords meeting the inclusion guarantee
    score^2 >= 2(k-1) cost, by exhaustive scan."""
    cost = matrix.cost()
    out = []
    for message, codeword, score in exhaustive_codeword_scores(code, matrix):
        if score * score >= 2 * (code.k - 1) * cost:
            out.append((message, codeword, score))
    return out


def binomial_mod(n: int, r: int, modulus: int) -> int:
    return math.comb(n, r) % modulus


def poly_eval_naive(field, coeffs, x: int) -> int:
    """Sum of c_i x^i using only field.mul/add on scalars."""
    acc = 0
    xp = 1
    for c in np.asarray(coeffs, dtype=np.int64):
        acc = int(field.add(acc, field.mul(int(c), xp)))
        xp = int(field.mul(xp, x))
    return acc


def hoeffding_radius(n: int, eta: float) -> float:
    return math.sqrt(n * math.log(8.0 / eta) / 2.0)


def wilson_interval(bad: int, trials: int, z: float = 1.959963984540054):
    """95% Wilson score interval, written out longhand."""
    phat = bad / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials**2)) / denom
    return (max(0.0, center - half), min(1.0, center + half))
