"""Seeded generators for the synthetic anomaly regimes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import synth_params as P
from .core import ConfigError, Dataset


def _labeled(normal: np.ndarray, anomalies: np.ndarray, name: str) -> Dataset:
    x = np.vstack([normal, anomalies])
    y = np.r_[np.zeros(len(normal), np.int8), np.ones(len(anomalies), np.int8)]
    return Dataset(x, y, name)


def _annulus(rng: np.random.Generator, k: int, inner: float, outer: float) -> np.ndarray:
    # radius drawn so that points are uniform in area
    r = np.sqrt(rng.uniform(inner**2, outer**2, k))
    theta = rng.uniform(0.0, 2 * np.pi, k)
    return np.c_[r * np.cos(theta), r * np.sin(theta)]


def gen_global_s1(seed: int, n_normal: int = P.N_NORMAL, n_anomaly: int = P.N_ANOMALY) -> Dataset:
    """Gaussian cloud at the origin with anomalies scattered on a far annulus."""
    rng = np.random.default_rng(seed)
    normal = rng.normal(0.0, P.S1_NORMAL_SD, (n_normal, 2))
    anomalies = _annulus(rng, n_anomaly, P.S1_ANNULUS_INNER, P.S1_ANNULUS_OUTER)
    return _labeled(normal, anomalies, "S1-global")


def _arc_distance(p: np.ndarray, center: tuple[float, float], upper: bool) -> np.ndarray:
    """Distance from points to a half circle of radius S2_RADIUS (upper or lower half)."""
    v = p - np.asarray(center)
    r = np.hypot(v[:, 0], v[:, 1])
    on_side = v[:, 1] >= 0 if upper else v[:, 1] <= 0
    ends = np.asarray(center) + np.array([[P.S2_RADIUS, 0.0], [-P.S2_RADIUS, 0.0]])
    to_end = np.min(np.linalg.norm(p[:, None, :] - ends[None], axis=2), axis=1)
    return np.where(on_side, np.abs(r - P.S2_RADIUS), to_end)


def gen_local_s2(seed: int, n_normal: int = P.N_NORMAL, n_anomaly: int = P.N_ANOMALY) -> Dataset:
    """Two interleaved moons; anomalies fill the low-density gaps between them."""
    rng = np.random.default_rng(seed)
    n_upper = n_normal // 2
    n_lower = n_normal - n_upper
    t_up = rng.uniform(0.0, np.pi, n_upper)
    t_lo = rng.uniform(0.0, np.pi, n_lower)
    r = P.S2_RADIUS
    upper = np.c_[r * np.cos(t_up), r * np.sin(t_up)]
    lower = np.c_[r - r * np.cos(t_lo), P.S2_VERTICAL_OFFSET - r * np.sin(t_lo)]
    normal = np.vstack([upper, lower]) + rng.normal(0.0, P.S2_JITTER_SD, (n_normal, 2))

    lo = np.array([-r, P.S2_VERTICAL_OFFSET - r])
    hi = np.array([2 * r, r])
    found: list[np.ndarray] = []
    while sum(len(f) for f in found) < n_anomaly:
        cand = rng.uniform(lo, hi, (4 * n_anomaly, 2))
        clear = np.minimum(
            _arc_distance(cand, (0.0, 0.0), upper=True),
            _arc_distance(cand, (r, P.S2_VERTICAL_OFFSET), upper=False),
        )
        found.append(cand[clear >= P.S2_ARC_CLEARANCE])
    anomalies = np.vstack(found)[:n_anomaly]
    return _labeled(normal, anomalies, "S2-local")


def gen_dependency_s3(seed: int, n_normal: int = P.N_NORMAL, n_anomaly: int = P.N_ANOMALY) -> Dataset:
    """Normals follow y = x, anomalies y = -x, over the same x range."""
    rng = np.random.default_rng(seed)
    xn = rng.uniform(*P.S3_X_RANGE, n_normal)
    xa = rng.uniform(*P.S3_X_RANGE, n_anomaly)
    normal = np.c_[xn, xn + rng.normal(0.0, P.S3_NOISE_SD, n_normal)]
    anomalies = np.c_[xa, -xa + rng.normal(0.0, P.S3_NOISE_SD, n_anomaly)]
    return _labeled(normal, anomalies, "S3-dependency")


@dataclass(frozen=True)
class TwoDensityLayout:
    """Row ranges of the blocks in a two-density dataset, in row order."""

    n_dense: int
    n_sparse: int
    n_boundary: int

    @property
    def dense(self) -> slice:
        return slice(0, self.n_dense)

    @property
    def sparse(self) -> slice:
        return slice(self.n_dense, self.n_dense + self.n_sparse)

    @property
    def dense_boundary(self) -> slice:
        s = self.n_dense + self.n_sparse
        return slice(s, s + self.n_boundary)

    @property
    def sparse_boundary(self) -> slice:
        s = self.n_dense + self.n_sparse + self.n_boundary
        return slice(s, s + self.n_boundary)

    def in_dense_blob(self) -> np.ndarray:
        """Boolean mask over all rows: True for rows belonging to the dense blob."""
        mask = np.zeros(self.n_dense + self.n_sparse + 2 * self.n_boundary, dtype=bool)
        mask[self.dense] = True
        mask[self.dense_boundary] = True
        return mask


def gen_two_density(seed: int, n_dense: int = 200, n_sparse: int = 200,
                    scale_ratio: float = 4.0, n_boundary: int = 0) -> Dataset:
    """Two well-separated Gaussian blobs of different spread.

    The dense blob (sd 1) is centered at the origin; the sparse blob (sd
    ``scale_ratio``) sits ``20 * scale_ratio`` away along the first axis.
    Rows are ordered dense, sparse, then ``n_boundary`` planted points on
    each blob's boundary circle (radius 2.5 sd), dense first; see
    :class:`TwoDensityLayout`. The result is unlabeled.
    """
    if n_dense < 10 or n_sparse < 10:
        raise ConfigError("n_dense and n_sparse must be >= 10")
    if scale_ratio < 1:
        raise ConfigError(f"scale_ratio must be >= 1, got {scale_ratio}")
    rng = np.random.default_rng(seed)
    center = np.array([P.TWO_DENSITY_SEPARATION * scale_ratio, 0.0])
    dense = rng.normal(0.0, 1.0, (n_dense, 2))
    sparse = center + rng.normal(0.0, scale_ratio, (n_sparse, 2))
    theta = rng.uniform(0.0, 2 * np.pi, (2, n_boundary))
    ring = np.stack([np.cos(theta), np.sin(theta)], axis=-1) * P.BOUNDARY_RADIUS_SD
    dense_b = ring[0]
    sparse_b = center + scale_ratio * ring[1]
    x = np.vstack([dense, sparse, dense_b, sparse_b])
    return Dataset(x, None, f"two-density-x{scale_ratio:g}")


GENERATORS = {
    "s1": gen_global_s1,
    "s2": gen_local_s2,
    "s3": gen_dependency_s3,
    "two-density": gen_two_density,
}
