"""Closed-form quantities for the K-read symmetric substitution channel.

Everything here is a pure function of the channel and code parameters:
channel capacity (partition-grouped entropy sum), the exact per-position
outcome pmf, lower/upper bounds on that pmf, Hoeffding concentration
envelopes for the per-trial tallies, the finite-length success certificate
for the soft interpolation decoder, asymptotic leading forms, and the rate
thresholds that bound the two decoders.

Logarithms are natural unless a name says otherwise; "normalized" values
divide by log(q).  0*log(0) is taken as 0 throughout.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterator

from scipy.special import logsumexp

__all__ = [
    "OutcomePmf",
    "PmfBounds",
    "PsiEnvelope",
    "FiniteLengthCertificate",
    "TheoryReport",
    "entropy_q",
    "epsilon_q",
    "capacity",
    "capacity_bits",
    "capacity_limit",
    "phi_grouped",
    "outcome_pmf",
    "pmf_bounds",
    "concentration_radius",
    "concentration_interval",
    "psi_holds",
    "finite_length_certificate",
    "asymptotic_forms",
    "rate_threshold_kv",
    "rate_threshold_majority",
    "kv_validity_bound",
    "theory_report",
]


def entropy_q(p: float, q: int) -> float:
    """q-ary entropy H_q(p), normalized to [0, 1] by log(q)."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    total = 0.0
    if p > 0.0:
        total += p * math.log(q - 1) - p * math.log(p)
    if p < 1.0:
        total -= (1.0 - p) * math.log(1.0 - p)
    return total / math.log(q)


def epsilon_q(q: int, K: int) -> float:
    """Slack factor K(K-1)/(q-1) used by the relaxed pmf bounds."""
    if q < 2 or K < 1:
        raise ValueError("need q >= 2 and K >= 1")
    return K * (K - 1) / (q - 1)


def _partitions(total: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    # Non-increasing positive parts.
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for first in range(min(largest, total), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _phi_terms(q: int, K: int, p: float) -> Iterator[tuple[float, float]]:
    """Yield (log_coefficient, log_T) per partition of K.

    The output-entropy sum over read-count compositions (r_0..r_{q-1}) of K
    collapses onto integer partitions: a partition with t positive parts and
    part-multiplicities m_d accounts for q!/((q-t)! prod m_d!) compositions,
    each weighted by the multinomial K!/prod(part_i!) and carrying
    T = (q - t) + sum_i w^{part_i} with w = (1-p)(q-1)/p.  The coefficient
    mult*count*T is returned in log space; log_T also carries the sign of
    the T*log(T) summand.
    """
    log_w = math.log((1.0 - p) * (q - 1) / p)
    lg_k = math.lgamma(K + 1)
    for lam in _partitions(K):
        t = len(lam)
        if t > q:
            continue
        log_mult = lg_k - sum(math.lgamma(x + 1) for x in lam)
        mults = Counter(lam)
        log_count = sum(math.log(q - i) for i in range(t))
        log_count -= sum(math.lgamma(m + 1) for m in mults.values())
        terms = [x * log_w for x in lam]
        if q > t:
            terms.append(math.log(q - t))
        log_t = float(logsumexp(terms))
        yield log_mult + log_count + log_t, log_t


def phi_grouped(q: int, K: int, p: float) -> float:
    """The entropy sum Phi = sum over compositions of mult * T * log(T).

    Evaluated by partition grouping.  Plain-float value: intended for
    small-parameter cross checks against direct composition enumeration
    (it overflows for large q where only `capacity` is safe to call).
    """
    if q < 2 or K < 2 or not 0.0 < p < 1.0:
        raise ValueError("need q >= 2, K >= 2, 0 < p < 1")
    return sum(math.exp(lc) * lt for lc, lt in _phi_terms(q, K, p))


def capacity(q: int, K: int, p: float) -> float:
    """Capacity of the K-read channel, normalized to units of log(q).

    H(Y) = [K log((q-1)/p) + log q] - prefactor * Phi with
    prefactor = p^K / (q (q-1)^K); the prefactor is folded into each
    partition term in log space so no intermediate overflows.
    """
    if q < 2 or K < 2:
        raise ValueError("need q >= 2 and K >= 2")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly inside (0, 1)")
    piece1 = K * math.log((q - 1) / p) + math.log(q)
    lpref = K * math.log(p) - math.log(q) - K * math.log(q - 1)
    piece2 = sum(math.exp(lpref + lc) * lt for lc, lt in _phi_terms(q, K, p))
    h_y = piece1 - piece2
    return h_y / math.log(q) - K * entropy_q(p, q)


def capacity_bits(q: int, K: int, p: float) -> float:
    """Capacity in bits per position: normalized capacity times log2(q)."""
    return capacity(q, K, p) * math.log2(q)


def capacity_limit(K: int, p: float) -> float:
    """Large-alphabet capacity limit 1 - p^K."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return 1.0 - p**K


def _trunc_mul(a: list[Fraction], b: list[Fraction], deg: int) -> list[Fraction]:
    out = [Fraction(0)] * (deg + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if i + j > deg:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def _count_bounded_words(s: int, j: int, m: int) -> int:
    """Words of length s over an m-letter alphabet, every letter used < j times.

    Inclusion-exclusion over the letters that reach j occurrences, with the
    exponential generating coefficients kept as exact rationals.
    """
    if s == 0:
        return 1
    if m <= 0:
        return 0
    tail = [Fraction(0)] * (s + 1)
    for d in range(j, s + 1):
        tail[d] = Fraction(1, math.factorial(d))
    total = Fraction(0)
    poly = [Fraction(1)] + [Fraction(0)] * s
    for i in range(s // j + 1):
        if i > 0:
            poly = _trunc_mul(poly, tail, s)
        # Remaining m-i letters are unconstrained: their EGF is exp((m-i)x).
        n_i = sum(
            poly[a] * Fraction((m - i) ** (s - a), math.factorial(s - a))
            for a in range(s + 1)
            if poly[a]
        )
        total += (-1) ** i * math.comb(m, i) * n_i
    total *= math.factorial(s)
    assert total.denominator == 1
    return int(total)


@dataclass(frozen=True)
class OutcomePmf:
    """Exact per-position outcome probabilities for one channel use."""

    p_success: float
    p_erasure_a: float
    p_erasure_b: float
    p_error: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_success, self.p_erasure_a, self.p_erasure_b, self.p_error)

    def total(self) -> float:
        return sum(self.as_tuple())


def outcome_pmf(q: int, K: int, p: float) -> OutcomePmf:
    """Exact pmf of the four per-position outcomes.

    Success: the sent symbol is read at least twice and strictly more often
    than any other symbol.  Erasure A: it is read exactly once, all other
    reads pairwise distinct wrong symbols.  Erasure B: all K reads are
    pairwise distinct wrong symbols.  Error: everything else.
    """
    if K < 2 or K > q - 1:
        raise ValueError("need 2 <= K <= q - 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    w = p / (q - 1)
    p_ea = K * (1.0 - p) * w ** (K - 1) * math.perm(q - 1, K - 1)
    p_eb = w**K * math.perm(q - 1, K)
    p_s = 0.0
    for j in range(2, K + 1):
        count = _count_bounded_words(K - j, j, q - 1)
        p_s += math.comb(K, j) * (1.0 - p) ** j * w ** (K - j) * count
    p_err = max(0.0, 1.0 - p_s - p_ea - p_eb)
    return OutcomePmf(p_s, p_ea, p_eb, p_err)


@dataclass(frozen=True)
class PmfBounds:
    """Open lower/upper bounds sandwiching the exact outcome pmf (q > K).

    The plain fields are the direct combinatorial bounds; the relaxed_*
    fields are the simplified forms obtained by discounting with
    eps_q = K(K-1)/(q-1).  Relaxed upper bounds for the first three
    outcomes coincide with u_s, u_ea, u_eb; both error lower bounds are 0.
    The error upper bound is the complement 1 - l_s - l_ea - l_eb; its
    relaxation uses (1-x)^K > 1 - Kx, giving eps_q * p.
    """

    eps_q: float
    l_s: float
    u_s: float
    l_ea: float
    u_ea: float
    l_eb: float
    u_eb: float
    l_e: float
    u_e: float
    relaxed_l_s: float
    relaxed_l_ea: float
    relaxed_l_eb: float
    relaxed_u_e: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def pmf_bounds(q: int, K: int, p: float) -> PmfBounds:
    if K < 2 or q <= K:
        raise ValueError("need q > K >= 2")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly inside (0, 1)")
    beta = p * (q - K) / (q - 1)
    eps = epsilon_q(q, K)
    u_s = 1.0 - p**K - K * (1.0 - p) * p ** (K - 1)
    # Resumming j = 0..K of binom(K,j)(1-p)^j beta^(K-j) gives
    # ((1-p) + beta)^K = (1 - p(K-1)/(q-1))^K; the j = 0, 1 terms are
    # then subtracted off.
    l_s = (
        (1.0 - p * (K - 1) / (q - 1)) ** K
        - beta**K
        - K * (1.0 - p) * beta ** (K - 1)
    )
    return PmfBounds(
        eps_q=eps,
        l_s=l_s,
        u_s=u_s,
        l_ea=K * (1.0 - p) * beta ** (K - 1),
        u_ea=K * (1.0 - p) * p ** (K - 1),
        l_eb=beta**K,
        u_eb=p**K,
        l_e=0.0,
        u_e=1.0 - (1.0 - p * (K - 1) / (q - 1)) ** K,
        relaxed_l_s=u_s - eps * p / K,
        relaxed_l_ea=(1.0 - eps) * K * (1.0 - p) * p ** (K - 1),
        relaxed_l_eb=(1.0 - eps) * p**K,
        relaxed_u_e=eps * p,
    )


def concentration_radius(n: int, eta: float) -> float:
    """Hoeffding radius delta_n = sqrt(n ln(8/eta) / 2)."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 < eta < 1.0:
        raise ValueError("eta must lie strictly inside (0, 1)")
    return math.sqrt(n * math.log(8.0 / eta) / 2.0)


@dataclass(frozen=True)
class PsiEnvelope:
    """Count intervals whose joint event holds w.p. > 1 - eta over n positions.

    Bounds are on raw outcome counts, not frequencies.  All intervals are
    open except that the error count may sit at its lower endpoint 0.
    """

    n: int
    q: int
    K: int
    p: float
    eta: float
    delta_n: float
    success: tuple[float, float]
    erasure_a: tuple[float, float]
    erasure_b: tuple[float, float]
    error: tuple[float, float]
    prob_lower: float

    def as_dict(self) -> dict:
        return asdict(self)


def concentration_interval(n: int, q: int, K: int, p: float, eta: float) -> PsiEnvelope:
    """Simultaneous concentration envelope for the four outcome tallies."""
    if K < 2 or q <= K:
        raise ValueError("need q > K >= 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    delta = concentration_radius(n, eta)
    eps = epsilon_q(q, K)
    u_s = 1.0 - p**K - K * (1.0 - p) * p ** (K - 1)
    u_ea = K * (1.0 - p) * p ** (K - 1)
    u_eb = p**K
    return PsiEnvelope(
        n=n,
        q=q,
        K=K,
        p=p,
        eta=eta,
        delta_n=delta,
        success=(n * (u_s - eps * p / K) - delta, n * u_s + delta),
        erasure_a=(n * (1.0 - eps) * u_ea - delta, n * u_ea + delta),
        erasure_b=(n * (1.0 - eps) * u_eb - delta, n * u_eb + delta),
        error=(0.0, n * eps * p / K + delta),
        prob_lower=1.0 - eta,
    )


def psi_holds(tally, envelope: PsiEnvelope) -> bool:
    """True when a tally (success/erasure_a/erasure_b/error counts) lies
    inside the envelope.  Error admits its lower endpoint 0; the other
    bounds are strict."""
    if not 0 <= tally.error < envelope.error[1]:
        return False
    for count, (lo, hi) in (
        (tally.success, envelope.success),
        (tally.erasure_a, envelope.erasure_a),
        (tally.erasure_b, envelope.erasure_b),
    ):
        if not lo < count < hi:
            return False
    return True


@dataclass(frozen=True)
class FiniteLengthCertificate:
    """Sufficient condition for reconstruction failure probability <= 2*eta.

    s_star lower-bounds the sent codeword's score and o_star upper-bounds
    any rival codeword's score, both on the envelope event; satisfied
    requires s_star >= max(sqrt(2(k-1) c_star), o_star).  c_star is the
    envelope cost cap in its displayed closed form; c_star_adjusted is the
    column-exact cap obtained by charging consolidated columns
    binom(mu K + 1, 2) and all-distinct-read columns K binom(mu + 1, 2),
    with the all-distinct count lower-bounded on the same event.
    """

    n: int
    k: int
    q: int
    K: int
    p: float
    mu: int
    eta: float
    delta_n: float
    alpha: float
    eps_q: float
    o_star: float
    s_star: float
    c_star: float
    c_star_adjusted: float
    sqrt_term: float
    satisfied: bool

    def trial_inequalities(
        self, cost: int, score_true: int, rival_score: int
    ) -> dict[str, bool]:
        """Per-trial inequality chain, meaningful on the envelope event."""
        return {
            "cost_le_c_star": cost <= self.c_star,
            "cost_le_c_star_adjusted": cost <= self.c_star_adjusted,
            "score_ge_s_star": score_true >= self.s_star,
            "rival_le_o_star": rival_score <= self.o_star,
        }

    def as_dict(self) -> dict:
        return asdict(self)


def finite_length_certificate(
    n: int, k: int, q: int, K: int, p: float, mu: int, eta: float
) -> FiniteLengthCertificate:
    if not 1 <= k <= n <= q:
        raise ValueError("need 1 <= k <= n <= q")
    if K < 2 or q <= K:
        raise ValueError("need q > K >= 2")
    if mu < 1:
        raise ValueError("mu must be a positive integer")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly inside (0, 1)")
    delta = concentration_radius(n, eta)
    eps = epsilon_q(q, K)
    alpha = p**K + K * (1.0 - p) * p ** (K - 1)
    o_star = mu * (
        n * (eps * p + alpha)
        + (k - 1) * K * (1.0 - alpha)
        + delta * (K + 2 + (k - 1) * K / n)
    )
    s_star = mu * (
        n * (K * (1.0 - alpha) - eps * p + K * (1.0 - eps) * (1.0 - p) * p ** (K - 1))
        - (K + 1) * delta
    )
    c_star = (mu * K / 2.0) * (
        n * ((mu * K - 1) * (1.0 - (1.0 - eps) * alpha) + (mu - 1) * alpha)
        + 2.0 * delta * (mu * (K + 1) - 2)
    )
    t_full = math.comb(mu * K + 1, 2)
    t_split = K * math.comb(mu + 1, 2)
    c_star_adjusted = n * t_full - max(0.0, n * (1.0 - eps) * alpha - 2.0 * delta) * (
        t_full - t_split
    )
    sqrt_term = math.sqrt(2.0 * (k - 1) * max(c_star, 0.0))
    return FiniteLengthCertificate(
        n=n,
        k=k,
        q=q,
        K=K,
        p=p,
        mu=mu,
        eta=eta,
        delta_n=delta,
        alpha=alpha,
        eps_q=eps,
        o_star=o_star,
        s_star=s_star,
        c_star=c_star,
        c_star_adjusted=c_star_adjusted,
        sqrt_term=sqrt_term,
        satisfied=s_star >= max(sqrt_term, o_star),
    )


def asymptotic_forms(
    n: int, k: int, K: int, p: float, mu: int
) -> tuple[float, float, float]:
    """Leading-order (rival cap, true score floor, cost cap) at length n.

    These are the displayed n->infinity forms; the rival cap keeps only the
    channel term and drops the (k-1)-proportional contribution present in
    the finite-length o_star, so o_star(n)/n approaches mu*(eps_q*p + alpha)
    rather than mu*alpha for fixed q.  TheoryReport surfaces the residual.
    """
    if mu < 1 or K < 2 or not 0.0 < p < 1.0 or not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n, K >= 2, mu >= 1, 0 < p < 1")
    alpha = p**K + K * (1.0 - p) * p ** (K - 1)
    o_lead = mu * alpha * n
    s_lead = mu * K * (1.0 - p**K - (K - 1) * (1.0 - p) * p ** (K - 1)) * n
    c_lead = (mu * K / 2.0) * ((mu * K - 1) * (1.0 - alpha) + (mu - 1) * alpha) * n
    return (o_lead, s_lead, c_lead)


def rate_threshold_kv(K: int, p: float) -> float:
    """Rate below which the soft interpolation decoder succeeds (asymptotic).

    Valid for p <= kv_validity_bound(K); outside that range the same
    expression is returned and the caller should flag it.
    """
    if K < 2 or not 0.0 < p < 1.0:
        raise ValueError("need K >= 2 and 0 < p < 1")
    t = 1.0 - p**K - (K - 1) * (1.0 - p) * p ** (K - 1)
    u = 1.0 - p**K - K * (1.0 - p) * p ** (K - 1)
    return K * t * t / (1.0 + (K - 1) * u)


def rate_threshold_majority(K: int, p: float) -> float:
    """Rate below which majority voting plus erasure decoding succeeds."""
    if K < 2 or not 0.0 < p < 1.0:
        raise ValueError("need K >= 2 and 0 < p < 1")
    return 1.0 - p**K - K * (1.0 - p) * p ** (K - 1)


def kv_validity_bound(K: int) -> float:
    """Largest p for which the soft-decoder threshold expression applies."""
    if K < 2:
        raise ValueError("K must be at least 2")
    return K ** (-1.0 / (K - 1))


@dataclass(frozen=True)
class TheoryReport:
    """Bundle of every closed-form quantity at one parameter point."""

    q: int
    K: int
    p: float
    capacity: float
    capacity_bits: float
    capacity_limit: float
    threshold_kv: float
    threshold_majority: float
    kv_validity_p: float
    kv_in_validity: bool
    pmf: OutcomePmf
    bounds: PmfBounds
    certificate: FiniteLengthCertificate | None
    asymptotic_per_n: tuple[float, float, float] | None
    o_slope_gap_per_n: float | None

    def as_dict(self) -> dict:
        return asdict(self)


def theory_report(
    q: int,
    K: int,
    p: float,
    n: int | None = None,
    k: int | None = None,
    mu: int = 1,
    eta: float = 0.1,
) -> TheoryReport:
    """Evaluate all closed forms at (q, K, p); add the finite-length
    certificate when n and k are supplied."""
    cert = None
    asympt = None
    gap = None
    if n is not None and k is not None:
        cert = finite_length_certificate(n, k, q, K, p, mu, eta)
        per_n = asymptotic_forms(n, k, K, p, mu)
        asympt = (per_n[0] / n, per_n[1] / n, per_n[2] / n)
        gap = cert.o_star / n - asympt[0]
    return TheoryReport(
        q=q,
        K=K,
        p=p,
        capacity=capacity(q, K, p),
        capacity_bits=capacity_bits(q, K, p),
        capacity_limit=capacity_limit(K, p),
        threshold_kv=rate_threshold_kv(K, p),
        threshold_majority=rate_threshold_majority(K, p),
        kv_validity_p=kv_validity_bound(K),
        kv_in_validity=p <= kv_validity_bound(K),
        pmf=outcome_pmf(q, K, p),
        bounds=pmf_bounds(q, K, p),
        certificate=cert,
        asymptotic_per_n=asympt,
        o_slope_gap_per_n=gap,
    )
