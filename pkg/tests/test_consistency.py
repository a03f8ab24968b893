from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import random_discrete_dataset, random_mixed_dataset
from pairrank.consistency import (consistency_rate, inconsistency_count, inconsistency_rate,
                                  pattern_stats, rank_pairwise_consistency)
from pairrank.dataset import DatasetError, from_arrays
from pairrank.discretize import discretize_dataset


def single_pattern_dataset():
    y = ["a"] * 36 + ["b"] * 6 + ["c"] * 5
    return from_arrays(np.zeros((47, 1), dtype=int), y, nominal=[0])


def test_worked_inconsistency_count():
    assert inconsistency_count([36, 6, 5]) == 11


def test_single_pattern_rate():
    ds = single_pattern_dataset()
    assert inconsistency_rate(ds, [0]) == 11 / 47
    assert consistency_rate(ds, [0]) == 1 - 11 / 47
    stats = pattern_stats(ds, [0])
    assert stats.totals.tolist() == [47] and stats.majority.tolist() == [36]


def test_unique_patterns_are_consistent():
    ds = from_arrays(np.array([[0, 0], [0, 1], [1, 0], [1, 1]]), ["a", "b", "a", "b"],
                     nominal=[0, 1])
    assert inconsistency_rate(ds, [0, 1]) == 0.0
    assert consistency_rate(ds, [0, 1]) == 1.0


def test_empty_subset_rejected():
    with pytest.raises(ValueError):
        inconsistency_rate(single_pattern_dataset(), [])


def test_two_attributes_share_the_pair_rate(rng):
    ds = random_discrete_dataset(rng, 2, 30)
    s = rank_pairwise_consistency(ds).scores()
    assert s[0] == s[1] == consistency_rate(ds, [0, 1])


def test_matches_hashing_oracle(rng):
    for _ in range(20):
        ds = random_mixed_dataset(rng, int(rng.integers(2, 9)), int(rng.integers(5, 80)))
        disc = discretize_dataset(ds)
        expected = oracles.pairwise_consistency_scores(disc)
        got = rank_pairwise_consistency(ds)
        assert got.scores().tolist() == expected
        assert got.order == oracles.order_of(expected)


def test_class_copy_ranked_first():
    y = np.array([0, 1, 2] * 8)
    X = np.column_stack([np.zeros(24), np.ones(24), y, np.zeros(24)])
    r = rank_pairwise_consistency(from_arrays(X, y, nominal=range(4)))
    assert r.order[0] == 2
    assert r.entries[0][1] == 1.0 > r.entries[1][1]


@pytest.mark.parametrize("threads, block, dense", [(4, 3, 1 << 16), (2, 4, 1), (8, 1, 6)])
def test_dense_and_sorted_counting_agree(rng, threads, block, dense):
    ds = random_discrete_dataset(rng, 12, 90, max_card=5)
    assert rank_pairwise_consistency(ds, threads=threads, block=block, dense_limit=dense) == \
        rank_pairwise_consistency(ds)


datasets = st.tuples(st.integers(1, 5), st.integers(1, 25), st.integers(0, 2 ** 32 - 1))


@settings(max_examples=60, deadline=None)
@given(datasets)
def test_rate_bounds_and_row_order(params):
    n, w, seed = params
    rng = np.random.default_rng(seed)
    ds = random_discrete_dataset(rng, n, max(w, 3), max_card=3)
    w = ds.n_instances
    top = np.bincount(ds.class_column.codes).max()
    perm = rng.permutation(w)
    shuffled = ds.take_rows(perm)
    for k in range(1, n + 1):
        for subset in combinations(range(n), k):
            rate = inconsistency_rate(ds, subset)
            assert 0.0 <= rate <= (w - top) / w
            assert inconsistency_rate(shuffled, subset) == rate


def test_upper_bound_reached_by_single_block():
    ds = single_pattern_dataset()
    assert inconsistency_rate(ds, [0]) == (47 - 36) / 47


def test_needs_two_attributes():
    with pytest.raises(DatasetError):
        rank_pairwise_consistency(single_pattern_dataset())
