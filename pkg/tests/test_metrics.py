import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from svead.core import ConfigError, Dataset, DetectorConfig
from svead.metrics import UndefinedMetricError, auc_pr, auc_roc, repeated_eval, run_seed
from svead.synth import gen_global_s1

from .oracles import pair_count_auc, rank_by_rank_ap, threshold_ap


class TestAucRoc:
    @pytest.mark.parametrize(
        "scores,labels,expected",
        [
            ([0.9, 0.8, 0.1, 0.2], [1, 1, 0, 0], 1.0),
            ([0.5, 0.5], [1, 0], 0.5),
            ([0.9, 0.4, 0.6, 0.1], [1, 1, 0, 0], 0.75),
            ([0.1, 0.2, 0.8, 0.9], [1, 1, 0, 0], 0.0),
        ],
    )
    def test_examples(self, scores, labels, expected):
        assert auc_roc(scores, labels) == expected

    def test_ties_count_half(self):
        # pos {1, 2, 2}, neg {2, 0}: three wins over 0, two ties at 2 -> (3 + 1) / 6
        assert auc_roc([1, 2, 2, 2, 0], [1, 1, 1, 0, 0]) == pytest.approx(2 / 3, abs=1e-15)

    def test_matches_pair_count_with_ties(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 60))
            y = rng.integers(0, 2, n)
            y[:2] = [0, 1]
            s = rng.integers(0, 5, n).astype(float)
            assert auc_roc(s, y) == pytest.approx(pair_count_auc(s.tolist(), y.tolist()), abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32), st.integers(3, 80))
    def test_monotone_transform_and_label_flip(self, seed, n):
        rng = np.random.default_rng(seed)
        s = rng.normal(size=n)
        y = rng.integers(0, 2, n)
        y[:2] = [0, 1]
        base = auc_roc(s, y)
        assert auc_roc(np.exp(3 * s) + 7, y) == pytest.approx(base, abs=1e-12)
        assert auc_roc(s, 1 - y) == pytest.approx(1 - base, abs=1e-12)

    @pytest.mark.parametrize("labels", [[0, 0, 0], [1, 1, 1]])
    def test_single_class_undefined(self, labels):
        with pytest.raises(UndefinedMetricError):
            auc_roc([0.1, 0.2, 0.3], labels)
        with pytest.raises(UndefinedMetricError):
            auc_pr([0.1, 0.2, 0.3], labels)

    def test_input_validation(self):
        with pytest.raises(ValueError, match="length"):
            auc_roc([0.1, 0.2], [0, 1, 1])
        with pytest.raises(ValueError, match="0 or 1"):
            auc_roc([0.1, 0.2], [0, 2])


class TestAucPr:
    def test_examples(self):
        assert auc_pr([0.9, 0.8, 0.1, 0.2], [1, 1, 0, 0]) == 1.0
        assert auc_pr([0.9, 0.6, 0.4, 0.1], [1, 0, 1, 0]) == pytest.approx(5 / 6, abs=1e-15)

    def test_tied_block_is_one_cut(self):
        # the top block {1, 0, 1} enters at once with precision 2/3
        assert auc_pr([0.9, 0.9, 0.9, 0.1, 0.2], [1, 0, 1, 0, 1]) == pytest.approx((2 * 2 / 3 + 3 / 4) / 3)

    def test_matches_threshold_enumeration_with_ties(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 60))
            y = rng.integers(0, 2, n)
            y[:2] = [0, 1]
            s = rng.integers(0, 6, n).astype(float)
            assert auc_pr(s, y) == pytest.approx(threshold_ap(s.tolist(), y.tolist()), abs=1e-12)

    @pytest.mark.parametrize("p", [0.05, 0.1, 0.3])
    def test_random_scores_give_base_rate(self, p):
        rng = np.random.default_rng(int(p * 100))
        y = (rng.random(10_000) < p).astype(int)
        ap = auc_pr(rng.random(10_000), y)
        assert abs(ap - p) <= 0.03

    def test_range(self, rng):
        for _ in range(20):
            y = rng.integers(0, 2, 40)
            y[:2] = [0, 1]
            ap = auc_pr(rng.normal(size=40), y)
            assert 0 < ap <= 1


def test_rank_oracle_on_distinct_scores(rng):
    for _ in range(20):
        n = int(rng.integers(2, 100))
        y = rng.integers(0, 2, n)
        y[:2] = [1, 0]
        s = rng.permutation(n).astype(float)
        assert auc_pr(s, y) == pytest.approx(rank_by_rank_ap(s.tolist(), y.tolist()), abs=1e-12)


class TestRepeatedEval:
    def test_runs_one_has_zero_std(self):
        r = repeated_eval(gen_global_s1(0), DetectorConfig(m=16, t=20), runs=1)
        assert r.runs == 1 and r.roc_std == 0.0 and r.pr_std == 0.0

    def test_fixed_seed_has_zero_std(self):
        r = repeated_eval(gen_global_s1(0), DetectorConfig(m=16, t=20), runs=3, vary_seed=False)
        assert r.roc_std == 0.0 and r.pr_std == 0.0
        assert len(set(r.roc_runs)) == 1

    def test_s1_summary(self):
        r = repeated_eval(gen_global_s1(0), DetectorConfig(m=16, t=100), runs=5)
        assert r.roc_mean > 0.95
        assert r.roc_std < 0.02
        assert r.roc_std == pytest.approx(np.std(r.roc_runs, ddof=1))

    def test_run_seeds_are_distinct(self):
        seeds = {run_seed(7, r) for r in range(100)}
        assert len(seeds) == 100

    def test_unlabeled_rejected(self):
        with pytest.raises(ConfigError, match="labels"):
            repeated_eval(Dataset(np.zeros((5, 2))), DetectorConfig())

    def test_single_class_rejected(self):
        ds = Dataset(np.arange(10.0).reshape(5, 2), labels=np.zeros(5, dtype=int))
        with pytest.raises(UndefinedMetricError):
            repeated_eval(ds, DetectorConfig(m=2, t=2))

    def test_runs_must_be_positive(self):
        with pytest.raises(ConfigError):
            repeated_eval(gen_global_s1(0), DetectorConfig(), runs=0)
