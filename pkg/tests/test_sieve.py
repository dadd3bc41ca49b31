import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import trial_division_is_prime
from tuplegaps.sieve import SieveSegment, base_primes, sieve_segment

BASE = base_primes(10**6 + 10)  # covers every interval up to 10^12


def test_base_primes_small():
    assert base_primes(10).primes.tolist() == [2, 3, 5, 7]
    assert base_primes(2).primes.tolist() == [2]
    assert base_primes(3).primes.tolist() == [2, 3]


def test_base_primes_count_matches_oracle(prime_table):
    # 78498 is the trial-division count below 10^6
    assert int(prime_table[: 10**6 + 1].sum()) == 78498
    assert len(base_primes(10**6)) == 78498
    assert np.array_equal(base_primes(10**6).primes, np.flatnonzero(prime_table[: 10**6 + 1]))


@pytest.mark.parametrize("limit", [1, 0, -5, 2**32 + 1])
def test_base_primes_rejects_out_of_range(limit):
    with pytest.raises(ValueError):
        base_primes(limit)


def test_base_primes_immutable():
    with pytest.raises(ValueError):
        BASE.primes[0] = 4


def test_small_segments():
    assert sieve_segment(2, 30, BASE).primes().tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert sieve_segment(0, 2, BASE).primes().tolist() == []
    assert sieve_segment(24, 28, BASE).primes().tolist() == []
    assert sieve_segment(0, 1, BASE).bits.tolist() == [False]


def test_segment_near_1e9_matches_trial_division():
    seg = sieve_segment(10**9, 10**9 + 10**3, BASE)
    expected = [n for n in range(10**9, 10**9 + 10**3) if trial_division_is_prime(n)]
    assert seg.primes().tolist() == expected
    assert len(expected) == 49


def test_bits_against_table(prime_table):
    seg = sieve_segment(0, 10**6, BASE)
    assert np.array_equal(seg.bits, prime_table[: 10**6])


def test_insufficient_base_primes():
    small = base_primes(100)
    sieve_segment(0, 10**4, small)
    with pytest.raises(ValueError):
        sieve_segment(0, 10**4 + 1, small)


def test_bad_intervals():
    for lo, hi in [(5, 5), (7, 3), (-1, 10)]:
        with pytest.raises(ValueError):
            sieve_segment(lo, hi, BASE)
    with pytest.raises(ValueError):
        sieve_segment(0, 1000, BASE, max_length=999)


def test_is_prime_accessor():
    seg = sieve_segment(90, 110, BASE)
    assert [n for n in range(90, 110) if seg.is_prime(n)] == [97, 101, 103, 107, 109]
    with pytest.raises(IndexError):
        seg.is_prime(110)


def test_odd_bits_are_packed():
    seg = sieve_segment(0, 1 << 20, BASE)
    assert isinstance(seg, SieveSegment)
    assert seg.odd_bits.nbytes == (1 << 20) // 16


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**7 - 2), st.integers(1, 3000))
def test_oracle_equivalence(lo, length):
    hi = min(lo + length, 10**7)
    seg = sieve_segment(lo, hi, BASE)
    assert seg.bits.tolist() == [trial_division_is_prime(n) for n in range(lo, hi)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**12 - 10**4), st.integers(1, 5000), st.integers(1, 5000))
def test_segment_concatenation(a, x, y):
    b, c = a + x, a + x + y
    joined = np.concatenate([sieve_segment(a, b, BASE).bits, sieve_segment(b, c, BASE).bits])
    assert np.array_equal(joined, sieve_segment(a, c, BASE).bits)


def test_deterministic():
    s1 = sieve_segment(10**11, 10**11 + 10**5, BASE)
    s2 = sieve_segment(10**11, 10**11 + 10**5, BASE)
    assert np.array_equal(s1.odd_bits, s2.odd_bits)
