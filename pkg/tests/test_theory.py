"""Closed-form pmf, bounds, capacity, concentration, and certificate checks."""

import math

import pytest

from rsrecon.multiplicity import PositionTally
from rsrecon.theory import (
    _count_bounded_words,
    asymptotic_forms,
    capacity,
    capacity_bits,
    capacity_limit,
    concentration_interval,
    concentration_radius,
    entropy_q,
    epsilon_q,
    finite_length_certificate,
    kv_validity_bound,
    outcome_pmf,
    phi_grouped,
    pmf_bounds,
    psi_holds,
    rate_threshold_kv,
    rate_threshold_majority,
    theory_report,
)

from oracles import (
    capacity_enumeration,
    cond_entropy_enumeration,
    count_words_enumeration,
    phi_naive,
    pmf_by_enumeration,
)

PMF_GRID = [(5, 2), (5, 3), (7, 2), (8, 3), (8, 4)]
P_GRID = [0.1, 0.3, 0.5, 0.9]

# Pairs where a bound meets the exact pmf with equality instead of strictly.
# At K=2 the success probability equals both of its bounds and the one-good-
# read erasure probability equals its upper bound; at K=3 only the success
# upper bound is tight.  Everything else is strict for 0 < p < 1, q > K.
EQUALITY_OK = {(2, "l_s"), (2, "u_s"), (2, "u_ea"), (3, "u_s")}


@pytest.mark.parametrize("q,K", PMF_GRID)
@pytest.mark.parametrize("p", P_GRID)
def test_outcome_pmf_matches_enumeration(q, K, p):
    exact = outcome_pmf(q, K, p)
    brute = pmf_by_enumeration(q, K, p)
    for a, b in zip(exact.as_tuple(), brute):
        assert abs(a - b) < 1e-12
    assert exact.total() == pytest.approx(1.0, abs=1e-12)


def test_outcome_pmf_degenerate_noise_levels():
    clean = outcome_pmf(5, 3, 0.0)
    assert clean.as_tuple() == (1.0, 0.0, 0.0, 0.0)
    dirty = outcome_pmf(5, 3, 1.0)
    assert dirty.p_success == 0.0 and dirty.p_erasure_a == 0.0


def test_outcome_pmf_parameter_ranges():
    with pytest.raises(ValueError):
        outcome_pmf(5, 1, 0.1)
    with pytest.raises(ValueError):
        outcome_pmf(5, 5, 0.1)  # needs K <= q - 1
    with pytest.raises(ValueError):
        outcome_pmf(5, 3, 1.5)


@pytest.mark.parametrize("q,K", PMF_GRID)
@pytest.mark.parametrize("p", P_GRID)
def test_bounds_sandwich_exact_pmf(q, K, p):
    pmf = outcome_pmf(q, K, p)
    b = pmf_bounds(q, K, p)
    pairs = [
        ("l_s", b.l_s, pmf.p_success, b.u_s, "u_s"),
        ("l_ea", b.l_ea, pmf.p_erasure_a, b.u_ea, "u_ea"),
        ("l_eb", b.l_eb, pmf.p_erasure_b, b.u_eb, "u_eb"),
        ("l_e", b.l_e, pmf.p_error, b.u_e, "u_e"),
        ("relaxed_l_s", b.relaxed_l_s, pmf.p_success, None, None),
        ("relaxed_l_ea", b.relaxed_l_ea, pmf.p_erasure_a, None, None),
        ("relaxed_l_eb", b.relaxed_l_eb, pmf.p_erasure_b, None, None),
        (None, None, pmf.p_error, b.relaxed_u_e, "relaxed_u_e"),
    ]
    for lo_name, lo, mid, hi, hi_name in pairs:
        if lo_name is not None:
            if (K, lo_name) in EQUALITY_OK:
                assert lo == pytest.approx(mid, abs=1e-12)
            else:
                assert lo < mid + 1e-15, (lo_name, lo, mid)
                assert not math.isclose(lo, mid, abs_tol=1e-12), (lo_name, lo, mid)
        if hi_name is not None:
            if (K, hi_name) in EQUALITY_OK:
                assert hi == pytest.approx(mid, abs=1e-12)
            else:
                assert mid < hi + 1e-15, (hi_name, mid, hi)
                assert not math.isclose(mid, hi, abs_tol=1e-12), (hi_name, mid, hi)


def test_bounds_closed_forms():
    q, K, p = 17, 3, 0.3
    b = pmf_bounds(q, K, p)
    assert b.eps_q == pytest.approx(K * (K - 1) / (q - 1))
    # complement of the three lower bounds, and its linearized relaxation
    assert b.u_e == pytest.approx(1.0 - b.l_s - b.l_ea - b.l_eb)
    assert b.u_e == pytest.approx(1.0 - (1.0 - p * (K - 1) / (q - 1)) ** K)
    assert b.relaxed_u_e == pytest.approx(b.eps_q * p)
    assert b.u_e < b.relaxed_u_e
    assert b.l_e == 0.0
    beta = p * (q - K) / (q - 1)
    assert b.l_eb == pytest.approx(beta**K)
    assert b.u_eb == pytest.approx(p**K)


def test_pmf_bounds_parameter_ranges():
    with pytest.raises(ValueError):
        pmf_bounds(3, 3, 0.2)
    with pytest.raises(ValueError):
        pmf_bounds(5, 2, 0.0)
    with pytest.raises(ValueError):
        pmf_bounds(5, 2, 1.0)


@pytest.mark.parametrize("s,j,m", [
    (s, j, m) for s in range(5) for j in range(1, 5) for m in range(1, 5)
])
def test_count_bounded_words_matches_enumeration(s, j, m):
    assert _count_bounded_words(s, j, m) == count_words_enumeration(s, j, m)


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("K", [2, 3])
@pytest.mark.parametrize("p", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_capacity_matches_enumeration(q, K, p):
    assert abs(capacity(q, K, p) - capacity_enumeration(q, K, p)) < 1e-9


def test_capacity_spot_value_bits():
    assert capacity_bits(2, 2, 0.1) == pytest.approx(0.7421, abs=1e-3)


def test_capacity_monotone_gap_to_limit():
    # as q grows the normalized capacity approaches 1 - p^K
    gaps = [abs(capacity(q, 2, 0.3) - capacity_limit(2, 0.3)) for q in (16, 256, 4096)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_capacity_rejects_degenerate_p():
    for bad in (0.0, 1.0):
        with pytest.raises(ValueError):
            capacity(4, 2, bad)
    # K >= q is a legitimate channel (more reads than alphabet letters)
    assert abs(capacity(3, 3, 0.5) - capacity_enumeration(3, 3, 0.5)) < 1e-9


@pytest.mark.parametrize("q,K", [(4, 2), (5, 3), (7, 2), (4, 4)])
@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_phi_grouping_matches_composition_sum(q, K, p):
    assert phi_grouped(q, K, p) == pytest.approx(phi_naive(q, K, p), rel=1e-10)


@pytest.mark.parametrize("q,K", [(2, 2), (3, 2), (5, 3)])
@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
def test_conditional_entropy_factorizes(q, K, p):
    expect = K * entropy_q(p, q) * math.log(q)
    assert cond_entropy_enumeration(q, K, p) == pytest.approx(expect, abs=1e-12)


def test_entropy_examples():
    assert entropy_q(0.5, 2) == pytest.approx(1.0)
    assert entropy_q(0.0, 5) == 0.0
    assert entropy_q(1.0, 2) == 0.0
    assert entropy_q(0.1, 2) == pytest.approx(0.468996, abs=1e-5)
    assert entropy_q(0.3, 2) == pytest.approx(entropy_q(0.7, 2))


def test_concentration_radius_value():
    assert concentration_radius(200, 0.08) == pytest.approx(21.4596, abs=1e-2)
    with pytest.raises(ValueError):
        concentration_radius(0, 0.1)
    with pytest.raises(ValueError):
        concentration_radius(100, 1.0)


def test_concentration_interval_brackets_means():
    n, q, K, p, eta = 400, 257, 3, 0.2, 0.1
    env = concentration_interval(n, q, K, p, eta)
    pmf = outcome_pmf(q, K, p)
    assert env.delta_n == pytest.approx(concentration_radius(n, eta))
    assert env.prob_lower == pytest.approx(0.9)
    for (lo, hi), mean in (
        (env.success, n * pmf.p_success),
        (env.erasure_a, n * pmf.p_erasure_a),
        (env.erasure_b, n * pmf.p_erasure_b),
    ):
        assert lo < mean < hi
    assert env.error[0] == 0.0 and env.error[1] > n * pmf.p_error


def test_psi_holds_boundaries():
    env = concentration_interval(400, 257, 3, 0.2, 0.1)
    mid = PositionTally(
        success=int((env.success[0] + env.success[1]) / 2),
        erasure_a=int((env.erasure_a[0] + env.erasure_a[1]) / 2),
        erasure_b=int(env.erasure_b[1] - 1),
        error=0,
    )
    assert psi_holds(mid, env)
    # error count may sit at zero but not reach its upper endpoint
    bad_err = PositionTally(mid.success, mid.erasure_a, mid.erasure_b,
                            math.ceil(env.error[1]))
    assert not psi_holds(bad_err, env)
    # the other three bounds are strict
    low_s = PositionTally(math.floor(env.success[0]), mid.erasure_a,
                          mid.erasure_b, 0)
    assert not psi_holds(low_s, env)


def test_certificate_worked_point():
    cert = finite_length_certificate(1000, 200, 1024, 3, 0.1, 2, 0.1)
    assert cert.o_star == pytest.approx(1742, rel=5e-3)
    assert cert.s_star == pytest.approx(5510, rel=5e-3)
    assert cert.c_star == pytest.approx(16352, rel=5e-3)
    assert cert.sqrt_term == pytest.approx(2551, rel=5e-3)
    assert cert.satisfied
    chain = cert.trial_inequalities(
        cost=int(cert.c_star) - 1,
        score_true=int(cert.s_star) + 1,
        rival_score=int(cert.o_star),
    )
    assert all(chain.values())


def test_certificate_noise_free_collapse():
    n, k, q, K, mu, eta = 1000, 200, 1024, 3, 2, 0.1
    p = 1e-9
    cert = finite_length_certificate(n, k, q, K, p, mu, eta)
    d = cert.delta_n
    assert cert.s_star == pytest.approx(mu * (n * K - (K + 1) * d), rel=1e-6)
    assert cert.o_star == pytest.approx(
        mu * ((k - 1) * K + d * (K + 2 + (k - 1) * K / n)), rel=1e-6
    )


def test_certificate_parameter_ranges():
    with pytest.raises(ValueError):
        finite_length_certificate(10, 11, 64, 2, 0.1, 1, 0.1)
    with pytest.raises(ValueError):
        finite_length_certificate(63, 16, 64, 1, 0.1, 1, 0.1)
    with pytest.raises(ValueError):
        finite_length_certificate(63, 16, 64, 2, 0.0, 1, 0.1)
    with pytest.raises(ValueError):
        finite_length_certificate(63, 16, 64, 2, 0.1, 0, 0.1)


def test_asymptotic_forms_match_certificate_slopes():
    n, k, q, K, p, mu, eta = 10**6, 2, 10**7, 3, 0.3, 1, 0.1
    cert = finite_length_certificate(n, k, q, K, p, mu, eta)
    o_lead, s_lead, c_lead = asymptotic_forms(n, k, K, p, mu)
    assert abs(cert.o_star - o_lead) / o_lead < 0.05
    assert abs(cert.s_star - s_lead) / s_lead < 0.01
    assert abs(cert.c_star - c_lead) / c_lead < 0.01
    alpha = p**K + K * (1 - p) * p ** (K - 1)
    assert o_lead == pytest.approx(mu * alpha * n)
    with pytest.raises(ValueError):
        asymptotic_forms(10, 2, 2, 0.0, 1)


def test_threshold_spot_values():
    assert rate_threshold_kv(2, 0.3) == pytest.approx(0.6577, abs=1e-4)
    assert rate_threshold_majority(2, 0.3) == pytest.approx(0.49, abs=1e-12)
    assert rate_threshold_kv(3, 0.2) == pytest.approx(0.9253, abs=1e-4)
    assert rate_threshold_majority(3, 0.2) == pytest.approx(0.896, abs=1e-12)
    assert capacity_limit(2, 0.3) == pytest.approx(0.91)
    assert kv_validity_bound(2) == pytest.approx(0.5)
    assert kv_validity_bound(3) == pytest.approx(0.57735, abs=1e-4)


@pytest.mark.parametrize("K", [2, 3, 4])
def test_threshold_ordering_within_validity(K):
    top = kv_validity_bound(K)
    for i in range(1, 40):
        p = top * i / 40
        assert capacity_limit(K, p) >= rate_threshold_kv(K, p) - 1e-12
        assert rate_threshold_kv(K, p) >= rate_threshold_majority(K, p) - 1e-12


def test_theory_report_with_and_without_certificate():
    bare = theory_report(64, 2, 0.3)
    assert bare.certificate is None and bare.o_slope_gap_per_n is None
    assert bare.kv_in_validity
    full = theory_report(64, 2, 0.05, n=63, k=15, mu=2, eta=0.1)
    assert full.certificate is not None and full.certificate.satisfied
    o_per_n, _, _ = full.asymptotic_per_n
    assert full.o_slope_gap_per_n == pytest.approx(
        full.certificate.o_star / 63 - o_per_n
    )
    assert full.o_slope_gap_per_n > 0
    d = full.as_dict()
    assert d["certificate"]["satisfied"] is True
    assert d["pmf"]["p_success"] == pytest.approx(full.pmf.p_success)
