"""Finite field arithmetic against direct modular/carry-less references."""

import math

import numpy as np
import pytest

from rsrecon.fields import Field, _gf2m_mul

from oracles import poly_eval_naive


@pytest.mark.parametrize("q", [6, 9, 10, 12, 15, 100, 2**17])
def test_invalid_orders_rejected(q):
    with pytest.raises(ValueError):
        Field(q)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 16, 64, 256, 257, 1024])
def test_valid_orders_accepted(q):
    f = Field(q)
    assert f.q == q
    assert np.array_equal(f.enumerate_elements(), np.arange(q))


def test_gf256_uses_the_smallest_irreducible_modulus():
    # degree-8 candidates below 0x11B all factor; 0x11B itself does not
    assert Field(256).modulus == 0x11B


def test_gf256_known_inverse_pair():
    # classic table fact for the 0x11B modulus
    f = Field(256)
    assert int(f.mul(0x53, 0xCA)) == 0x01
    assert int(f.inv(0x53)) == 0xCA


@pytest.mark.parametrize("q", [5, 257])
def test_prime_field_matches_modular_arithmetic(q):
    f = Field(q)
    rng = np.random.default_rng(q)
    a = rng.integers(0, q, size=300)
    b = rng.integers(0, q, size=300)
    assert np.array_equal(f.add(a, b), (a + b) % q)
    assert np.array_equal(f.sub(a, b), (a - b) % q)
    assert np.array_equal(f.mul(a, b), (a * b) % q)
    assert np.array_equal(f.neg(a), (-a) % q)
    nz = b[b != 0]
    assert np.array_equal(f.inv(nz), np.array([pow(int(x), q - 2, q) for x in nz]))
    for e in (0, 1, 2, 5, q - 1):
        assert np.array_equal(f.pow(a, e), np.array([pow(int(x), e, q) for x in a]))


@pytest.mark.parametrize("q", [4, 8, 16, 256])
def test_binary_extension_mul_matches_carryless_reference(q):
    f = Field(q)
    m = q.bit_length() - 1
    rng = np.random.default_rng(q)
    a = rng.integers(0, q, size=200)
    b = rng.integers(0, q, size=200)
    expect = np.array(
        [_gf2m_mul(int(x), int(y), f.modulus, m) for x, y in zip(a, b)]
    )
    assert np.array_equal(f.mul(a, b), expect)
    assert np.array_equal(f.add(a, b), a ^ b)
    assert np.array_equal(f.sub(a, b), a ^ b)
    assert np.array_equal(f.neg(a), a)


@pytest.mark.parametrize("q", [2, 3, 8, 64, 257])
def test_field_axioms_on_random_triples(q):
    f = Field(q)
    rng = np.random.default_rng(q + 1)
    a = rng.integers(0, q, size=500)
    b = rng.integers(0, q, size=500)
    c = rng.integers(0, q, size=500)
    assert np.array_equal(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c))
    assert np.array_equal(f.add(a, f.add(b, c)), f.add(f.add(a, b), c))
    assert np.array_equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)))
    assert np.array_equal(f.mul(a, 1), a)
    assert np.array_equal(f.add(a, 0), a)
    assert np.array_equal(f.mul(a, 0), np.zeros_like(a))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 64, 257, 1024])
def test_every_nonzero_element_has_an_inverse(q):
    f = Field(q)
    a = np.arange(1, q, dtype=np.int64)
    assert np.all(f.mul(a, f.inv(a)) == 1)
    assert np.all(f.div(a, a) == 1)


def test_zero_division_raises():
    f = Field(7)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    with pytest.raises(ZeroDivisionError):
        f.div(np.array([1, 2]), np.array([3, 0]))


def test_generator_has_full_multiplicative_order():
    for q in (5, 8, 256, 257):
        f = Field(q)
        seen = set()
        x = 1
        for _ in range(q - 1):
            seen.add(x)
            x = int(f.mul(x, f.generator))
        assert len(seen) == q - 1
        assert x == 1


@pytest.mark.parametrize("q", [5, 8, 257])
def test_powers_and_poly_eval(q):
    f = Field(q)
    rng = np.random.default_rng(3 * q)
    a = int(rng.integers(1, q))
    pw = f.powers(a, 6)
    assert int(pw[0]) == 1
    for i in range(1, 6):
        assert int(pw[i]) == int(f.mul(pw[i - 1], a))
    coeffs = rng.integers(0, q, size=5)
    xs = rng.integers(0, q, size=10)
    got = f.poly_eval(coeffs, xs)
    expect = [poly_eval_naive(f, coeffs, int(x)) for x in xs]
    assert np.array_equal(got, np.array(expect))


@pytest.mark.parametrize("q,char", [(7, 7), (8, 2), (256, 2), (13, 13)])
def test_binomial_table_matches_comb_mod_char(q, char):
    f = Field(q)
    table = f.binomial_table(12, 12)
    for n in range(12):
        for r in range(12):
            assert int(table[n, r]) == math.comb(n, r) % char


@pytest.mark.parametrize("q", [5, 8])
def test_sum_reduction_matches_scalar_loop(q):
    f = Field(q)
    rng = np.random.default_rng(17)
    arr = rng.integers(0, q, size=(4, 6))
    total = 0
    for v in arr.ravel():
        total = int(f.add(total, int(v)))
    assert int(f.sum(arr)) == total
    by_axis = f.sum(arr, axis=0)
    for j in range(6):
        col = 0
        for i in range(4):
            col = int(f.add(col, int(arr[i, j])))
        assert int(by_axis[j]) == col


def test_q2_edge_case_arithmetic():
    f = Field(2)
    assert int(f.mul(1, 1)) == 1
    assert int(f.div(1, 1)) == 1
    assert int(f.add(1, 1)) == 0
    assert int(f.pow(1, 5)) == 1
