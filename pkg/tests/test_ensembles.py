"""Ensemble structures, running means, majority voting."""

from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ensemblelab import distributions as ds
from ensemblelab import ensembles as es
from ensemblelab.losses import zero_one_error


class TestBuild:
    def test_iid_draws_distinct_and_deterministic(self):
        spec = es.iid(ds.Gaussian(0, 1), 5)
        e1 = es.build_ensemble(spec, 17)
        assert np.array_equal(e1, es.build_ensemble(spec, 17))
        assert len(np.unique(e1)) == 5

    def test_duplicate_third_copies_first_bit_exact(self):
        e = es.build_ensemble(es.duplicate_third(ds.Gaussian(0, 1)), 3)
        assert e[2] == e[0] and e[1] != e[0]

    def test_duplicate_third_requires_k3(self):
        with pytest.raises(ValueError):
            es.EnsembleSpec(ds.Gaussian(0, 1), "duplicate_third", 4)

    def test_reordered_is_a_permutation(self):
        perm = es.build_ensemble(es.randomly_reordered([1.0, 2.0, 3.0]), 9)
        assert sorted(perm.tolist()) == [1.0, 2.0, 3.0]

    def test_reordered_uniform_over_permutations(self):
        """Chi-square over 6e4 seeds: all 6 orderings of a 3-list equally likely."""
        spec = es.randomly_reordered([1.0, 2.0, 3.0])
        index = {p: i for i, p in enumerate(permutations((1.0, 2.0, 3.0)))}
        batch = es.sample_ensembles(spec, 60000, 123)
        counts = np.zeros(6)
        for row in batch:
            counts[index[tuple(row)]] += 1
        chi2 = ((counts - 10000.0) ** 2 / 10000.0).sum()
        assert chi2 < 20.5  # 99.9% quantile of chi2(5)

    def test_positionwise_exchangeability_small_k(self):
        """Each position of a reordered list has the identical marginal law."""
        vals = (0.5, -1.0, 2.0, 0.25)
        marginals = [sorted(p[j] for p in permutations(vals)) for j in range(4)]
        assert all(m == marginals[0] for m in marginals)

    def test_fixed_list_length_mismatch(self):
        with pytest.raises(ValueError):
            es.EnsembleSpec(None, "randomly_reordered", 2, fixed=(1.0, 2.0, 3.0))


class TestPrefixMeans:
    def test_hand_examples(self):
        assert es.prefix_means(np.array([1.0, 3.0])).tolist() == [1.0, 2.0]
        np.testing.assert_allclose(es.prefix_means(np.array([0, 1, 0.5, 0.5])),
                                   [0, 0.5, 0.5, 0.5], atol=1e-15)

    def test_constant_idempotence(self):
        np.testing.assert_allclose(es.prefix_means(np.full(9, 2.5)), 2.5)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            es.prefix_means(np.array([]))

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=40))
    @settings(max_examples=200, deadline=None)
    def test_final_mean_matches_direct_sum(self, xs):
        arr = np.asarray(xs)
        final = es.prefix_means(arr)[-1]
        direct = arr.sum() / arr.size
        assert abs(final - direct) <= 1e-12 * max(1.0, abs(direct))

    @given(st.lists(st.floats(-100, 100), min_size=2, max_size=12))
    @settings(max_examples=200, deadline=None)
    def test_final_mean_order_invariant(self, xs):
        a = es.prefix_means(np.asarray(xs))[-1]
        b = es.prefix_means(np.asarray(xs)[::-1])[-1]
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))

    def test_batch_matches_single(self):
        batch = es.sample_ensembles(es.iid(ds.Gaussian(0, 1), 6), 50, 5)
        pm = es.prefix_means_batch(batch)
        np.testing.assert_allclose(pm[7], es.prefix_means(batch[7]), atol=1e-15)


class TestMajorityVote:
    def test_examples(self):
        assert es.majority_vote([1, 1, 0]) == 1
        assert es.majority_vote([1, 0]) == 0  # tie convention
        assert es.majority_vote([0, 0, 0, 1]) == 0

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            es.majority_vote([0.5, 1.0])

    @given(st.lists(st.integers(0, 1), min_size=1, max_size=15))
    @settings(max_examples=300, deadline=None)
    def test_vote_equals_mean_for_true_class_one(self, votes):
        """The 0/1 error of the vote equals the error of the mean prediction.

        Exact ties are the even-jury anomaly: with true class 1 both sides
        read a tie as an error, so the identity holds with no exclusions."""
        v = np.array(votes, dtype=float)
        mean_scores = np.array([1 - v.mean(), v.mean()])
        mv = es.majority_vote(v)
        vote_scores = np.array([1 - mv, mv], dtype=float)
        assert zero_one_error(mean_scores, 1) == zero_one_error(vote_scores, 1)

    @given(st.lists(st.integers(0, 1), min_size=1, max_size=15))
    @settings(max_examples=300, deadline=None)
    def test_vote_equals_mean_for_true_class_zero_without_ties(self, votes):
        """With true class 0 the identity needs the tie cases excluded: a tied
        mean is an error while the tie-broken vote is not (the same mechanism
        that breaks Condorcet monotonicity at even sizes)."""
        v = np.array(votes, dtype=float)
        if v.mean() == 0.5:
            return
        mean_scores = np.array([1 - v.mean(), v.mean()])
        mv = es.majority_vote(v)
        vote_scores = np.array([1 - mv, mv], dtype=float)
        assert zero_one_error(mean_scores, 0) == zero_one_error(vote_scores, 0)
