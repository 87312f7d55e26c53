import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebbias.primes import (
    iter_segments,
    iterate_prime_powers,
    pi,
    sieve_segment,
    small_primes,
    tally_range,
    tally_to,
)
from oracles import BruteState, bytearray_sieve, is_prime_td, prime_power_base


def test_sieve_small_range():
    assert sieve_segment(2, 12).primes().tolist() == [2, 3, 5, 7, 11]


def test_sieve_90_100():
    expected = [n for n in range(90, 100) if is_prime_td(n)]
    assert sieve_segment(90, 100).primes().tolist() == expected == [97]


@pytest.mark.parametrize("lo,hi", [(100, 100), (50, 10), (1, 10), (0, 5)])
def test_sieve_rejects_bad_range(lo, hi):
    with pytest.raises(ValueError):
        sieve_segment(lo, hi)


def test_sieve_budget():
    with pytest.raises(ValueError):
        sieve_segment(2, 1000, budget=500)


@settings(max_examples=200)
@given(st.integers(2, 200_000), st.integers(1, 3000))
def test_sieve_matches_trial_division(lo, length):
    seg = sieve_segment(lo, lo + length)
    assert seg.primes().tolist() == [n for n in range(lo, lo + length) if is_prime_td(n)]
    assert seg.count() == len(seg.primes())


def test_sieve_segment_containing_base_primes():
    # the base primes themselves must survive when the segment starts below sqrt(hi)
    seg = sieve_segment(3, 200)
    assert seg.primes().tolist() == [n for n in range(3, 200) if is_prime_td(n)]


def test_segments_threads_do_not_change_output():
    one = np.concatenate([s.primes() for s in iter_segments(300_000, 4096)])
    many = np.concatenate([s.primes() for s in iter_segments(300_000, 4096, threads=3)])
    assert np.array_equal(one, many)


def _collect(limit):
    out = []
    iterate_prime_powers(limit, out.append)
    return out


def test_prime_powers_examples():
    assert [pp.value for pp in _collect(10)] == [2, 3, 4, 5, 7, 8, 9]
    assert [pp.value for pp in _collect(2)] == [2]
    with pytest.raises(ValueError):
        _collect(1)


def test_prime_powers_exact():
    got = _collect(5000)
    expected = [n for n in range(2, 5001) if prime_power_base(n)]
    assert [pp.value for pp in got] == expected
    for pp in got:
        assert pp.p ** pp.k == pp.value
        assert pp.p == prime_power_base(pp.value)
        assert pp.logp == math.log(pp.p)


def test_tally_examples():
    assert tally_to(100, 4).counts == {1: 11, 3: 13}
    assert tally_to(10, 4).counts == {1: 1, 3: 2}
    assert tally_to(3, 4).counts == {1: 0, 3: 1}
    with pytest.raises(ValueError):
        tally_to(100, 2)


@pytest.mark.parametrize("q", [4, 7, 11, 13, 163, 15, 30])
def test_tally_against_brute_force(q):
    st_ = BruteState(q)
    for x in (2, 3, 10, 97, 1000, 4999, 10_000):
        st_.advance(x)
        t = tally_to(x, q)
        assert t.counts == st_.counts
        for a in st_.reduced:
            assert t.psi[a] == pytest.approx(st_.psi(a), rel=1e-12, abs=1e-12)


def test_pi_values():
    assert pi(100) == 25 == sum(1 for n in range(101) if is_prime_td(n))
    assert pi(1) == 0
    assert pi(0) == 0
    assert pi(10**6) == len(bytearray_sieve(10**6)) == 78498


def test_conservation():
    rng = random.Random(7)
    primes = bytearray_sieve(10**6)
    for _ in range(12):
        X = rng.randint(2, 10**6)
        q = rng.choice([4, 7, 11, 13, 163, 9, 20])
        t = tally_to(X, q)
        n_pi = sum(1 for p in primes if p <= X)
        dividing = sum(1 for p in primes if p <= X and q % p == 0)
        assert sum(t.counts.values()) + dividing == n_pi
        assert t.offclass_count == dividing


def test_psi_total_matches_prime_power_sum():
    X = 200_000
    for q in (4, 163):
        t = tally_to(X, q)
        logs = {a: [] for a in t.psi}
        off = []

        def visit(pp):
            a = pp.value % q
            (logs[a] if a in logs else off).append(pp.logp)

        iterate_prime_powers(X, visit)
        for a in t.psi:
            assert t.psi[a] == pytest.approx(math.fsum(logs[a]), rel=1e-12)
        assert t.offclass_psi == pytest.approx(math.fsum(off), rel=1e-12)
        psi_all = math.fsum(math.log(prime_power_base(n)) for n in range(2, X + 1) if prime_power_base(n))
        assert t.total_psi == pytest.approx(psi_all, rel=1e-9)


def test_monotone_in_frontier():
    prev = None
    for X in range(2, 3000, 37):
        t = tally_to(X, 13)
        if prev is not None:
            assert all(t.counts[a] >= prev.counts[a] for a in t.counts)
            assert all(t.psi[a] >= prev.psi[a] for a in t.psi)
        prev = t


@settings(max_examples=40, deadline=None)
@given(
    st.integers(3, 300_000),
    st.lists(st.floats(0.0, 1.0), min_size=1, max_size=5),
    st.sampled_from([4, 11, 163, 15]),
    st.sampled_from([64, 1000, 1 << 14, 1 << 20]),
)
def test_partition_independence(X, cuts, q, seg):
    points = sorted({2 + int(c * (X - 2)) for c in cuts})
    bounds = [2] + [p + 1 for p in points if p < X] + [X + 1]
    bounds = sorted(set(bounds))
    parts = [tally_range(lo, hi - 1, q, segment_size=seg) for lo, hi in zip(bounds, bounds[1:])]
    merged = parts[0]
    for part in parts[1:]:
        merged = merged.merge(part)
    whole = tally_to(X, q)
    assert merged.frontier == whole.frontier == X
    assert merged.counts == whole.counts
    assert merged.offclass_count == whole.offclass_count
    for a in whole.psi:
        assert merged.psi[a] == pytest.approx(whole.psi[a], rel=1e-12, abs=1e-12)


def test_merge_is_commutative_and_checks_adjacency():
    a = tally_range(2, 500, 4)
    b = tally_range(501, 900, 4)
    assert a.merge(b) == b.merge(a)
    with pytest.raises(ValueError):
        a.merge(tally_range(600, 900, 4))
    with pytest.raises(ValueError):
        a.merge(tally_range(501, 900, 7))


def test_small_primes():
    assert small_primes(1).size == 0
    assert small_primes(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
