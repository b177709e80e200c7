import numpy as np
import pytest

from svead import synth_params as P
from svead.core import ConfigError
from svead.synth import GENERATORS, TwoDensityLayout, gen_dependency_s3, gen_global_s1, gen_local_s2, gen_two_density

LABELED = [gen_global_s1, gen_local_s2, gen_dependency_s3]


def _mean_nn_distance(x: np.ndarray) -> float:
    d2 = ((x[:, None, :] - x[None, :, :]) ** 2).sum(-1)
    np.fill_diagonal(d2, np.inf)
    return float(np.sqrt(d2.min(axis=1)).mean())


@pytest.mark.parametrize("gen", LABELED)
class TestLabeledGenerators:
    def test_counts(self, gen):
        ds = gen(0)
        assert (ds.n, ds.d) == (300, 2)
        assert int(ds.labels.sum()) == 30
        assert np.isfinite(ds.features).all()

    def test_deterministic(self, gen):
        a, b = gen(11), gen(11)
        np.testing.assert_array_equal(a.features, b.features)
        np.testing.assert_array_equal(a.labels, b.labels)

    def test_seeds_differ(self, gen):
        a, b = gen(1), gen(2)
        assert a.features.shape == b.features.shape
        assert a.labels.sum() == b.labels.sum()
        assert not np.array_equal(a.features, b.features)

    def test_custom_sizes(self, gen):
        ds = gen(3, n_normal=50, n_anomaly=7)
        assert ds.n == 57 and int(ds.labels.sum()) == 7


def test_s1_anomalies_on_outer_shell():
    ds = gen_global_s1(0)
    r = np.linalg.norm(ds.features, axis=1)
    anomalous = r[ds.labels == 1]
    assert anomalous.min() > 3.5
    assert anomalous.min() >= P.S1_ANNULUS_INNER and anomalous.max() <= P.S1_ANNULUS_OUTER


def test_s2_anomalies_are_local():
    ds = gen_local_s2(0)
    r = np.linalg.norm(ds.features, axis=1)
    assert r[ds.labels == 1].max() <= 1.1 * r[ds.labels == 0].max()
    lo = ds.features[ds.labels == 0].min(axis=0)
    hi = ds.features[ds.labels == 0].max(axis=0)
    inside = ((ds.features[ds.labels == 1] >= lo - 0.1) & (ds.features[ds.labels == 1] <= hi + 0.1)).all(axis=1)
    assert inside.mean() > 0.9


def test_s3_correlation_signs():
    ds = gen_dependency_s3(0)
    normal, anomalous = ds.features[ds.labels == 0], ds.features[ds.labels == 1]
    assert np.corrcoef(normal.T)[0, 1] > 0.9
    assert np.corrcoef(anomalous.T)[0, 1] < -0.9
    assert anomalous[:, 0].min() >= P.S3_X_RANGE[0] and anomalous[:, 0].max() <= P.S3_X_RANGE[1]
    assert normal[:, 0].min() >= P.S3_X_RANGE[0] and normal[:, 0].max() <= P.S3_X_RANGE[1]


class TestTwoDensity:
    def test_dense_blob_is_tighter(self):
        ds = gen_two_density(0, 200, 200, 4.0)
        lay = TwoDensityLayout(200, 200, 0)
        assert _mean_nn_distance(ds.features[lay.dense]) < _mean_nn_distance(ds.features[lay.sparse])
        assert not ds.is_labeled

    def test_equal_spread_at_ratio_one(self):
        ds = gen_two_density(0, 400, 400, 1.0)
        lay = TwoDensityLayout(400, 400, 0)
        ratio = ds.features[lay.sparse].std(axis=0) / ds.features[lay.dense].std(axis=0)
        assert np.all(np.abs(ratio - 1) < 0.15)

    def test_boundary_points(self):
        lay = TwoDensityLayout(50, 60, 5)
        ds = gen_two_density(2, 50, 60, 3.0, n_boundary=5)
        assert ds.n == 50 + 60 + 10
        center = np.array([P.TWO_DENSITY_SEPARATION * 3.0, 0.0])
        np.testing.assert_allclose(np.linalg.norm(ds.features[lay.dense_boundary], axis=1), P.BOUNDARY_RADIUS_SD)
        np.testing.assert_allclose(np.linalg.norm(ds.features[lay.sparse_boundary] - center, axis=1),
                                   3.0 * P.BOUNDARY_RADIUS_SD)
        assert lay.in_dense_blob().sum() == 55

    def test_deterministic(self):
        np.testing.assert_array_equal(gen_two_density(5).features, gen_two_density(5).features)

    @pytest.mark.parametrize("kwargs", [dict(n_dense=5), dict(n_sparse=9), dict(scale_ratio=0.5)])
    def test_rejects_bad_arguments(self, kwargs):
        with pytest.raises(ConfigError):
            gen_two_density(0, **kwargs)


def test_registry():
    assert set(GENERATORS) == {"s1", "s2", "s3", "two-density"}
