"""Seifert-invariant arithmetic for integral homology spheres over S^2.

A Seifert homology sphere Sigma(p_1,...,p_l) is determined by pairwise
coprime multiplicities p_i >= 2.  Its normalized invariants
(e_0, (p_i', p_i)) are the unique solution of

    e_0 * p_1...p_l + sum_i p_i' * (p_1...p_l / p_i) = -1,   0 <= p_i' < p_i.

From these we get the integer-valued delta function

    delta(n) = 1 + |e_0| n - sum_i ceil(n p_i' / p_i),

whose partial sums form the tau sequence that generates the graded root of
the manifold.  The delta function is controlled by the numerical semigroup
G generated by P/p_i: on [0, N] (N the cutoff below) delta is >= 1 exactly
on members of G, is antisymmetric about N/2, and vanishes or is positive
after N.  Everything here is exact integer arithmetic; numpy is used only
for bulk evaluation over ranges.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import check_int64, checked_product, mod_inverse, pairwise_coprime
from .errors import DegenerateTupleError, NonPositiveEntryError, NotCoprimeError, NotMemberError


@dataclass(frozen=True)
class SeifertTuple:
    """Canonical multiplicity tuple: sorted ascending, entries >= 2, coprime.

    The empty tuple and single-entry tuples denote S^3.  Construct through
    make_tuple, which drops entries equal to 1 and sorts.
    """

    multiplicities: tuple

    def __post_init__(self):
        ms = self.multiplicities
        if any(m < 2 for m in ms):
            raise NonPositiveEntryError(f"multiplicities must be >= 2, got {ms}")
        if list(ms) != sorted(ms):
            raise ValueError(f"multiplicities must be sorted ascending, got {ms}")
        if not pairwise_coprime(ms):
            raise NotCoprimeError(f"multiplicities must be pairwise coprime, got {ms}")
        checked_product(ms)

    @property
    def fiber_count(self) -> int:
        return len(self.multiplicities)

    @property
    def product(self) -> int:
        return checked_product(self.multiplicities)

    @property
    def is_degenerate(self) -> bool:
        """True for S^3-like tuples (l <= 2) and (2,3,5): reduced rank 0."""
        return self.fiber_count <= 2 or self.multiplicities == (2, 3, 5)

    def __str__(self):
        if not self.multiplicities:
            return "S3"
        return "(" + ",".join(str(m) for m in self.multiplicities) + ")"


def make_tuple(raw) -> SeifertTuple:
    """Canonicalize a list of multiplicities: drop 1s, sort, validate."""
    entries = list(raw)
    if any(m < 1 for m in entries):
        raise NonPositiveEntryError(f"multiplicities must be >= 1, got {entries}")
    kept = tuple(sorted(m for m in entries if m > 1))
    return SeifertTuple(kept)


@dataclass(frozen=True)
class NormalizedInvariants:
    """Solution (e0, (p_i', p_i)) of the defining linear relation."""

    e0: int
    pairs: tuple  # of (p_prime, p)


@dataclass(frozen=True)
class NormalForm:
    """Unique expression n = P*(k + sum x_i/p_i) with 0 <= x_i < p_i.

    k >= 0 exactly when n is a member of the semigroup.
    """

    k: int
    x: tuple

    @property
    def is_member(self) -> bool:
        return self.k >= 0


def _require_fibers(t: SeifertTuple):
    if t.fiber_count < 1:
        raise DegenerateTupleError("operation needs at least one multiplicity")


@lru_cache(maxsize=4096)
def normalized_invariants(t: SeifertTuple) -> NormalizedInvariants:
    """Normalized invariants of the tuple; the defining relation is verified."""
    _require_fibers(t)
    ms = t.multiplicities
    P = t.product
    primes = []
    for p in ms:
        g = (P // p) % p
        primes.append((-mod_inverse(g, p)) % p)
    weighted = sum(pp * (P // p) for pp, p in zip(primes, ms))
    e0, rem = divmod(-1 - weighted, P)
    assert rem == 0
    assert e0 * P + weighted == -1
    return NormalizedInvariants(e0=e0, pairs=tuple(zip(primes, ms)))


def euler_number(t: SeifertTuple) -> Fraction:
    """Orbifold Euler number e0 + sum p_i'/p_i; always equals -1/P."""
    inv = normalized_invariants(t)
    e = Fraction(inv.e0) + sum(Fraction(pp, p) for pp, p in inv.pairs)
    assert e == Fraction(-1, t.product)
    return e


def n_cutoff(t: SeifertTuple) -> int:
    """Cutoff N = P*((l-2) - sum 1/p_i), past which delta is nonnegative."""
    _require_fibers(t)
    P = t.product
    return check_int64((t.fiber_count - 2) * P - sum(P // p for p in t.multiplicities))


def _ceil_div(a: int, b: int) -> int:
    # a >= 0, b > 0 in all uses here
    return (a + b - 1) // b


def delta_at(t: SeifertTuple, n: int) -> int:
    """delta(n) = 1 + |e0|*n - sum ceil(n p_i'/p_i), for n >= 0."""
    inv = normalized_invariants(t)
    return 1 + abs(inv.e0) * n - sum(_ceil_div(n * pp, p) for pp, p in inv.pairs)


def delta_array(t: SeifertTuple, upto: int) -> np.ndarray:
    """delta(n) for n = 0..upto as an int64 array (bulk form of delta_at)."""
    inv = normalized_invariants(t)
    # guard numpy intermediates: n * p_i' stays well inside int64
    check_int64(4 * (upto + 1) * max(abs(inv.e0), max(t.multiplicities)))
    n = np.arange(upto + 1, dtype=np.int64)
    acc = 1 + abs(inv.e0) * n
    for pp, p in inv.pairs:
        acc -= (n * pp + (p - 1)) // p
    return acc


def membership(t: SeifertTuple, n: int) -> NormalForm:
    """Normal form of n via residues; n is a member iff the result has k >= 0."""
    _require_fibers(t)
    P = t.product
    xs = []
    for p in t.multiplicities:
        g = (P // p) % p
        xs.append((n * mod_inverse(g, p)) % p)
    k, rem = divmod(n - sum(x * (P // p) for x, p in zip(xs, t.multiplicities)), P)
    assert rem == 0
    return NormalForm(k=k, x=tuple(xs))


def membership_k_array(t: SeifertTuple, upto: int) -> np.ndarray:
    """Normal-form k for n = 0..upto; k >= 0 marks semigroup members."""
    _require_fibers(t)
    P = t.product
    check_int64(4 * (upto + 1) * max(t.multiplicities))
    check_int64(4 * (upto + 1 + t.fiber_count * P))
    n = np.arange(upto + 1, dtype=np.int64)
    acc = n.copy()
    for p in t.multiplicities:
        g = (P // p) % p
        inv_g = mod_inverse(g, p)
        acc -= ((n * inv_g) % p) * (P // p)
    k, rem = np.divmod(acc, P)
    assert not rem.any()
    return k


def delta_semigroup(t: SeifertTuple, n: int) -> int:
    """delta(n) computed from the semigroup normal form: 1 + k."""
    nf = membership(t, n)
    if nf.k < 0:
        raise NotMemberError(f"{n} is not in the semigroup of {t}")
    return 1 + nf.k


def semigroup_sieve(t: SeifertTuple, bound: int) -> np.ndarray:
    """Boolean membership table for [0, bound], seeded at 0, generators P/p_i.

    Each generator is closed off with a cumulative-or along its residue
    classes, which is the usual unbounded-coin dynamic program.
    """
    _require_fibers(t)
    P = t.product
    size = bound + 1
    dp = np.zeros(size, dtype=bool)
    dp[0] = True
    for p in sorted(set(t.multiplicities), reverse=True):
        g = P // p
        if g > bound:
            continue
        pad = (-size) % g
        padded = np.concatenate([dp, np.zeros(pad, dtype=bool)])
        cols = padded.reshape(-1, g)
        np.logical_or.accumulate(cols, axis=0, out=cols)
        dp = padded[:size]
    return dp


def semigroup_elements_upto(t: SeifertTuple, bound: int) -> list:
    """Sorted members of the semigroup in [0, bound]."""
    if bound < 0:
        return []
    return np.flatnonzero(semigroup_sieve(t, bound)).tolist()


def tau_sequence(t: SeifertTuple) -> list:
    """tau(0..N+1) with tau(0) = 0 and tau(n+1) = tau(n) + delta(n)."""
    _require_fibers(t)
    N = n_cutoff(t)
    if N < 0:
        raise DegenerateTupleError(f"{t} has negative cutoff {N}")
    deltas = delta_array(t, N)
    tau = np.concatenate([[0], np.cumsum(deltas)])
    return [int(v) for v in tau]


@dataclass(frozen=True)
class WalkStatistics:
    """Rank data read off the tau walk of a tuple.

    kappa, min_tau and c are the sum-of-descents, walk minimum and
    sign-change count; leaf_count and red_total are the same ranks derived
    from the walk's local extrema (the graded-root view).  The two views
    must agree: red_total == kappa + min_tau and leaf_count == c + 1.
    """

    kappa: int
    min_tau: int
    c: int
    leaf_count: int
    red_total: int

    @property
    def rank_red(self) -> int:
        return self.kappa + self.min_tau

    @property
    def rank_hat(self) -> int:
        return 2 * self.c + 1


def walk_statistics(t: SeifertTuple) -> WalkStatistics:
    """Both rank views of the tau walk; degenerate tuples give rank 0/1."""
    if t.is_degenerate:
        return WalkStatistics(kappa=0, min_tau=0, c=0, leaf_count=1, red_total=0)
    deltas = delta_array(t, n_cutoff(t))
    nz = deltas[deltas != 0]
    assert nz[0] > 0 and nz[-1] < 0
    kappa = int(-nz[nz < 0].sum())
    tau = np.concatenate([np.zeros(1, dtype=np.int64), np.cumsum(nz)])
    min_tau = int(tau.min())
    neg_to_pos = (nz[:-1] < 0) & (nz[1:] > 0)
    c = int(neg_to_pos.sum()) + (1 if nz[-1] < 0 else 0)
    # extrema view: walk maxima at +/- sign flips, minima at -/+ flips
    pos_to_neg = (nz[:-1] > 0) & (nz[1:] < 0)
    inner = tau[1:-1]
    maxima = inner[pos_to_neg]
    minima = np.concatenate([tau[:1], inner[neg_to_pos], tau[-1:]])
    leaf_count = len(minima)
    red_total = int(maxima.sum() - minima.sum() + minima.min())
    return WalkStatistics(kappa=kappa, min_tau=min_tau, c=c,
                          leaf_count=leaf_count, red_total=red_total)


def rank_pair(t: SeifertTuple) -> tuple:
    """(reduced rank, hat rank) of the tuple."""
    stats = walk_statistics(t)
    return stats.rank_red, stats.rank_hat
