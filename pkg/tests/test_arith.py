import math

import pytest
from hypothesis import given, strategies as st

from k3sc.arith import (crt_pair, divisors, factorize, gcd, is_prime, is_square, is_squarefree, lcm, mod_inverse,
                        p_component, prime_divisors, square_prime_divisors, squarefree_decompose, units)
from k3sc.errors import IncompatibleCongruences, NotInvertible, NotPrime


def test_gcd_examples():
    assert gcd(0, 7) == 7
    assert gcd(4, 6) == 2
    assert gcd(4, 9) == 1
    assert gcd(0, 0) == 0
    assert gcd(-4, 6) == 2
    assert lcm(4, 6) == 12


def test_p_component_examples():
    assert p_component(12, 2) == 4
    assert p_component(12, 3) == 3
    assert p_component(7, 5) == 1
    with pytest.raises(NotPrime):
        p_component(12, 4)


def test_squarefree_examples():
    d = squarefree_decompose(1)
    assert (d.sign, d.squarefree, d.root) == (1, 1, 1)
    d = squarefree_decompose(-18)
    assert (d.sign, d.squarefree, d.root) == (-1, 2, 3)
    d = squarefree_decompose(8)
    assert (d.sign, d.squarefree, d.root) == (1, 2, 2)
    with pytest.raises(ValueError):
        squarefree_decompose(0)


def test_crt_examples():
    assert crt_pair(-1, 2, 1, 2) == (1, 2)
    # oracle: exhaustive residue scan
    want = [x for x in range(12) if x % 4 == 3 and x % 6 == 1]
    assert crt_pair(-1, 4, 1, 6) == (want[0], 12) == (7, 12)
    with pytest.raises(IncompatibleCongruences):
        crt_pair(1, 3, 2, 3)


def test_mod_inverse_examples():
    assert mod_inverse(1, 8) == 1
    assert mod_inverse(3, 8) == 3
    with pytest.raises(NotInvertible):
        mod_inverse(2, 8)


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert list(factorize(12).factors) == [(2, 2), (3, 1)]
    assert list(factorize(150).factors) == [(2, 1), (3, 1), (5, 2)]
    assert prime_divisors(150) == (2, 3, 5)
    assert square_prime_divisors(150) == (5,)


def test_units():
    assert units(1) == [0]
    assert units(8) == [1, 3, 5, 7]


@given(st.integers(1, 10 ** 6))
def test_factorize_reconstructs(n):
    prod = 1
    for p, e in factorize(n).factors:
        assert is_prime(p) and e >= 1
        prod *= p ** e
    assert prod == n


@given(st.integers(1, 5000))
def test_divisors_match_scan(n):
    # oracle: direct scan
    assert divisors(n) == [k for k in range(1, n + 1) if n % k == 0]


@given(st.integers(-10 ** 6, 10 ** 6).filter(bool))
def test_squarefree_decompose_identity(n):
    d = squarefree_decompose(n)
    assert d.sign * d.squarefree * d.root ** 2 == n
    assert is_squarefree(d.squarefree)


@given(st.integers(0, 10 ** 6))
def test_is_square_matches_isqrt(n):
    assert is_square(n) == (math.isqrt(n) ** 2 == n)


@given(st.integers(-100, 100), st.integers(1, 60), st.integers(-100, 100), st.integers(1, 60))
def test_crt_matches_scan(r1, m1, r2, m2):
    # oracle: exhaustive scan over one lcm period
    m = m1 * m2 // math.gcd(m1, m2)
    sols = [x for x in range(m) if (x - r1) % m1 == 0 and (x - r2) % m2 == 0]
    if not sols:
        with pytest.raises(IncompatibleCongruences):
            crt_pair(r1, m1, r2, m2)
    else:
        assert crt_pair(r1, m1, r2, m2) == (sols[0], m)


@given(st.integers(1, 3000), st.sampled_from([2, 3, 5, 7, 11]))
def test_p_component_divides(n, l):
    pc = p_component(n, l)
    assert n % pc == 0 and (n // pc) % l != 0
