import json
import random

import pytest

from floerrank import seifert
from floerrank.deltaseq import DeltaSequence, from_seifert, from_values
from floerrank.errors import (
    DegenerateTupleError,
    FirstElementNegativeError,
    NotConsecutiveError,
    SignMismatchError,
    SumMismatchError,
)

from conftest import random_delta_values, random_tuple


def test_from_seifert_examples():
    ds = from_seifert(seifert.make_tuple([2, 3, 7]))
    assert ds.positions == (0, 1) and ds.values == (1, -1)
    ds = from_seifert(seifert.make_tuple([2, 3, 13]))
    assert ds.positions == (0, 1, 6, 7) and ds.values == (1, -1, 1, -1)
    ds = from_seifert(seifert.make_tuple([2, 3, 35]))
    assert ds.positions == (0, 5, 6, 11, 12, 17, 18, 23, 24, 29)
    assert ds.values == (1, -1) * 5


def test_from_seifert_degenerate():
    with pytest.raises(DegenerateTupleError):
        from_seifert(seifert.make_tuple([2, 3, 5]))


def test_tau_prefix_sums():
    assert from_values([1, -1]).tau() == [0, 1, 0]
    assert from_values([1, -1, 1, -1]).tau() == [0, 1, 0, 1, 0]
    assert from_values([2, -1, 1, -2]).tau() == [0, 2, 1, 2, 0]


def test_rank_report_examples():
    rep = from_seifert(seifert.make_tuple([2, 3, 7])).rank()
    assert (rep.kappa, rep.min_tau, rep.c) == (1, 0, 1)
    assert (rep.rank_red, rep.rank_hat) == (1, 3)
    assert from_seifert(seifert.make_tuple([2, 3, 13])).rank().rank_red == 2
    assert from_seifert(seifert.make_tuple([2, 3, 35])).rank().rank_red == 5


def test_rank_empty_sequence():
    rep = from_values([]).rank()
    assert (rep.kappa, rep.min_tau, rep.c, rep.rank_red, rep.rank_hat) == (0, 0, 0, 0, 1)


def test_subsequence():
    ds = from_values([1, -1, 1, -1])
    assert ds.subsequence(ds.positions) == ds
    sub = ds.subsequence({0, 1})
    assert sub.values == (1, -1)
    with pytest.raises(FirstElementNegativeError):
        ds.subsequence({1})


def test_complement():
    ds = from_values([1, -1, 1, -1])
    assert ds.complement(set()) == ds
    assert ds.complement({0, 1}).values == (1, -1)
    # removing both positives leaves only negatives, all trimmed
    assert len(ds.complement({0, 2})) == 0


def test_refine():
    ds = DeltaSequence([5], [3])
    out = ds.refine(5, [1, 2])
    assert out.values == (1, 2) and out.positions[0] == 5
    out = DeltaSequence([0, 4], [1, -2]).refine(4, [-1, -1])
    assert out.values == (1, -1, -1)
    with pytest.raises(SignMismatchError):
        DeltaSequence([0], [2]).refine(0, [1, -1, 2])
    with pytest.raises(SumMismatchError):
        DeltaSequence([0], [2]).refine(0, [1, 2])


def test_merge():
    assert from_values([1, 2]).merge([0, 1]).values == (3,)
    assert from_values([2, -1, -1, -1]).merge([1, 2, 3]).values == (2, -3)
    with pytest.raises(SignMismatchError):
        from_values([1, -1]).merge([0, 1])
    with pytest.raises(NotConsecutiveError):
        from_values([1, 2, -1, 3]).merge([0, 3])


def test_canonical_values():
    assert from_values([1, 2, -1]).canonical_values() == [3, -1]
    assert from_values([3, -1]).canonical_values() == [3, -1]
    assert from_values([1, -1, -2, 4]).canonical_values() == [1, -3, 4]
    # idempotence: canonical of the canonical list is itself
    for vals in ([1, 2, -1], [1, -1, -2, 4], [5]):
        canon = from_values(vals).canonical_values()
        assert from_values(canon).canonical_values() == canon


def random_chain(rng, ds, steps=6):
    for _ in range(steps):
        if rng.random() < 0.5 and any(abs(v) >= 2 for v in ds.values):
            pos = rng.choice([p for p, v in zip(ds.positions, ds.values)
                              if abs(v) >= 2])
            v = ds.value_at(pos)
            cut = rng.randint(1, abs(v) - 1)
            sign = 1 if v > 0 else -1
            ds = ds.refine(pos, [sign * cut, v - sign * cut])
        else:
            runs = [(i, j) for i in range(len(ds)) for j in range(i + 1, len(ds) + 1)
                    if len({x > 0 for x in ds.values[i:j]}) == 1]
            i, j = rng.choice(runs)
            ds = ds.merge(list(ds.positions[i:j]))
    return ds


def test_refine_merge_invariance(rng):
    for _ in range(200):
        ds = from_values(random_delta_values(rng))
        before = ds.rank()
        after = random_chain(rng, ds).rank()
        assert (before.rank_red, before.rank_hat) == (after.rank_red, after.rank_hat)


def test_equivalence_preserves_ranks(rng):
    for _ in range(100):
        ds = from_values(random_delta_values(rng))
        canon = from_values(ds.canonical_values())
        assert (ds.rank().rank_red, ds.rank().rank_hat) == \
            (canon.rank().rank_red, canon.rank().rank_hat)


def test_subsequence_complement_inequalities(rng):
    tried = 0
    while tried < 200:
        ds = from_values(random_delta_values(rng, max_len=10))
        keep = {p for p in ds.positions if rng.random() < 0.5}
        try:
            sub = ds.subsequence(keep)
        except FirstElementNegativeError:
            continue
        tried += 1
        comp = ds.complement(keep)
        whole = ds.rank()
        assert sub.rank().rank_red + comp.rank().rank_red <= whole.rank_red
        assert sub.rank().rank_hat <= whole.rank_hat


def test_seifert_rank_matches_full_tau(rng):
    # recompute kappa / min tau from the full walk including delta zeros
    for _ in range(15):
        t = random_tuple(rng, max_product=3 * 10**4)
        tau = seifert.tau_sequence(t)
        deltas = seifert.delta_array(t, seifert.n_cutoff(t))
        kappa = int(-sum(d for d in deltas if d < 0))
        rep = from_seifert(t).rank()
        assert rep.rank_red == kappa + min(tau)
        stats = seifert.walk_statistics(t)
        assert (stats.rank_red, stats.rank_hat) == (rep.rank_red, rep.rank_hat)


def test_json_round_trip():
    ds = from_seifert(seifert.make_tuple([2, 3, 13]))
    data = json.loads(json.dumps(ds.to_json()))
    assert DeltaSequence.from_json(data) == ds
    assert data == {"positions": [0, 1, 6, 7], "values": [1, -1, 1, -1]}
    refined = ds.refine(6, [1])  # no-op refine keeps integer position
    assert DeltaSequence.from_json(json.loads(json.dumps(refined.to_json()))) == refined


def test_json_fraction_positions():
    ds = from_values([2, -1]).refine(0, [1, 1])
    data = json.loads(json.dumps(ds.to_json()))
    back = DeltaSequence.from_json(data)
    assert back == ds
    assert any(isinstance(p, str) for p in data["positions"])
