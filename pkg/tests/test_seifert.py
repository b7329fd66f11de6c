import random
from fractions import Fraction
from itertools import product as iproduct

import numpy as np
import pytest

from floerrank import seifert
from floerrank.errors import (
    DegenerateTupleError,
    NonPositiveEntryError,
    NotCoprimeError,
    NotMemberError,
)

from conftest import random_tuple


def test_make_tuple_canonicalizes():
    assert seifert.make_tuple([7, 3, 2]).multiplicities == (2, 3, 7)
    assert seifert.make_tuple([1, 5, 3, 2]).multiplicities == (2, 3, 5)
    assert seifert.make_tuple([]).multiplicities == ()
    assert seifert.make_tuple([1, 1]).multiplicities == ()


def test_make_tuple_rejects_bad_input():
    with pytest.raises(NotCoprimeError):
        seifert.make_tuple([2, 4, 5])
    with pytest.raises(NonPositiveEntryError):
        seifert.make_tuple([0, 3, 5])
    with pytest.raises(NotCoprimeError):
        seifert.make_tuple([3, 3])


def test_degenerate_flags():
    assert seifert.make_tuple([2, 3, 5]).is_degenerate
    assert seifert.make_tuple([7]).is_degenerate
    assert seifert.make_tuple([]).is_degenerate
    assert not seifert.make_tuple([2, 3, 7]).is_degenerate


def brute_normalized(ms):
    """Exhaustive search for the defining relation solution."""
    P = 1
    for p in ms:
        P *= p
    for combo in iproduct(*[range(p) for p in ms]):
        weighted = sum(pp * (P // p) for pp, p in zip(combo, ms))
        if (-1 - weighted) % P == 0:
            return (-1 - weighted) // P, combo
    raise AssertionError("no solution found")


def test_normalized_invariants_examples():
    ni = seifert.normalized_invariants(seifert.make_tuple([2, 3, 7]))
    assert ni.e0 == -1 and tuple(pp for pp, _ in ni.pairs) == (1, 1, 1)
    ni = seifert.normalized_invariants(seifert.make_tuple([2, 3, 5]))
    assert ni.e0 == -2 and tuple(pp for pp, _ in ni.pairs) == (1, 2, 4)
    ni = seifert.normalized_invariants(seifert.make_tuple([2]))
    assert ni.e0 == -1 and tuple(pp for pp, _ in ni.pairs) == (1,)


def test_normalized_invariants_against_brute_force():
    for ms in [(2,), (5,), (2, 3), (3, 4), (2, 3, 7), (2, 3, 5), (3, 4, 5),
               (2, 5, 9), (2, 3, 5, 7)]:
        t = seifert.make_tuple(list(ms))
        e0, combo = brute_normalized(t.multiplicities)
        ni = seifert.normalized_invariants(t)
        assert ni.e0 == e0
        assert tuple(pp for pp, _ in ni.pairs) == combo


def test_euler_number():
    assert seifert.euler_number(seifert.make_tuple([2, 3, 7])) == Fraction(-1, 42)
    assert seifert.euler_number(seifert.make_tuple([2, 3, 5])) == Fraction(-1, 30)
    assert seifert.euler_number(seifert.make_tuple([5])) == Fraction(-1, 5)


def test_euler_number_random(rng):
    for _ in range(25):
        t = random_tuple(rng, max_product=10**5)
        assert seifert.euler_number(t) == Fraction(-1, t.product)


def test_n_cutoff_examples():
    assert seifert.n_cutoff(seifert.make_tuple([2, 3, 7])) == 1
    assert seifert.n_cutoff(seifert.make_tuple([2, 3, 5])) == -1
    assert seifert.n_cutoff(seifert.make_tuple([2, 3, 5, 7])) == 173


def test_delta_at_examples():
    t = seifert.make_tuple([2, 3, 7])
    assert seifert.delta_at(t, 0) == 1
    assert seifert.delta_at(t, 1) == -1
    assert seifert.delta_at(seifert.make_tuple([2, 3, 13]), 6) == 1


def test_delta_array_matches_scalar():
    t = seifert.make_tuple([2, 5, 9])
    N = seifert.n_cutoff(t)
    arr = seifert.delta_array(t, 2 * N)
    for n in range(2 * N + 1):
        assert arr[n] == seifert.delta_at(t, n)


def test_membership_examples():
    t = seifert.make_tuple([2, 3, 7])
    nf = seifert.membership(t, 27)
    assert (nf.k, nf.x) == (0, (1, 0, 1)) and nf.is_member
    nf = seifert.membership(t, 42)
    assert (nf.k, nf.x) == (1, (0, 0, 0))
    nf = seifert.membership(t, 1)
    assert (nf.k, nf.x) == (-2, (1, 2, 6)) and not nf.is_member


def test_membership_reconstructs():
    t = seifert.make_tuple([3, 4, 5])
    P = t.product
    for n in range(0, 200):
        nf = seifert.membership(t, n)
        assert P * nf.k + sum(x * (P // p) for x, p in
                              zip(nf.x, t.multiplicities)) == n


def test_membership_agrees_with_sieve(rng):
    for _ in range(10):
        t = random_tuple(rng, max_product=3 * 10**4)
        N = seifert.n_cutoff(t)
        sieve = seifert.semigroup_sieve(t, N)
        karr = seifert.membership_k_array(t, N)
        for n in range(N + 1):
            assert bool(sieve[n]) == (karr[n] >= 0)
            assert (seifert.membership(t, n).k >= 0) == bool(sieve[n])


def test_delta_semigroup_examples():
    assert seifert.delta_semigroup(seifert.make_tuple([2, 3, 7]), 0) == 1
    assert seifert.delta_semigroup(seifert.make_tuple([2, 3, 35]), 12) == 1
    assert seifert.delta_semigroup(seifert.make_tuple([2, 3, 7]), 42) == 2
    with pytest.raises(NotMemberError):
        seifert.delta_semigroup(seifert.make_tuple([2, 3, 7]), 1)


def test_semigroup_elements_examples():
    assert seifert.semigroup_elements_upto(seifert.make_tuple([2, 3, 7]), 10) == [0, 6]
    assert seifert.semigroup_elements_upto(seifert.make_tuple([2, 3, 35]), 29) == \
        [0, 6, 12, 18, 24]
    assert seifert.semigroup_elements_upto(seifert.make_tuple([2, 3, 7]), 0) == [0]


def test_tau_sequence():
    assert seifert.tau_sequence(seifert.make_tuple([2, 3, 7])) == [0, 1, 0]
    tau = seifert.tau_sequence(seifert.make_tuple([2, 3, 13]))
    assert min(tau) == 0 and tau[-1] == 0 and tau[0] == 0
    with pytest.raises(DegenerateTupleError):
        seifert.tau_sequence(seifert.make_tuple([2, 3, 5]))


def test_delta_symmetry_and_bounds(rng):
    for _ in range(15):
        t = random_tuple(rng, max_product=5 * 10**4)
        N = seifert.n_cutoff(t)
        l = t.fiber_count
        D = seifert.delta_array(t, 3 * N)
        sieve = seifert.semigroup_sieve(t, N)
        assert all(D[n] == -D[N - n] for n in range(N + 1))
        assert all(-(l - 2) <= D[n] <= l - 2 for n in range(N + 1))
        assert all((D[n] >= 1) == bool(sieve[n]) for n in range(N + 1))
        assert all(D[n] >= 0 for n in range(N + 1, 3 * N + 1))
        members = np.flatnonzero(sieve)
        assert all(D[int(n)] == seifert.delta_semigroup(t, int(n)) for n in members)


def test_n_cutoff_positive_unless_exceptional(rng):
    assert seifert.n_cutoff(seifert.make_tuple([2, 3, 5])) < 0
    for _ in range(40):
        t = random_tuple(rng, max_product=10**5)
        assert seifert.n_cutoff(t) > 0


def test_walk_statistics_consistency(rng):
    for _ in range(20):
        t = random_tuple(rng, max_product=3 * 10**4)
        stats = seifert.walk_statistics(t)
        assert stats.red_total == stats.rank_red
        assert stats.leaf_count == stats.c + 1
        assert stats.rank_hat == 2 * stats.c + 1
        assert stats.rank_red >= 0


def test_walk_statistics_degenerate():
    stats = seifert.walk_statistics(seifert.make_tuple([2, 3, 5]))
    assert (stats.rank_red, stats.rank_hat) == (0, 1)
    assert seifert.rank_pair(seifert.make_tuple([])) == (0, 1)


def test_delta_array_overflow_guard():
    t = seifert.make_tuple([2, 3, 7])
    with pytest.raises(OverflowError):
        seifert.delta_array(t, 2**62)
