"""Dual-factor cell scores and their ensemble average."""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (
    ConfigError,
    Dataset,
    DetectorConfig,
    Normalize,
    ScoreVector,
    SVEADWarning,
    Variant,
    VoronoiPartition,
    derive_partition_seed,
    prepare_features,
)
from .partition import NearestAnchorSearch, _exact_nearest, partition_from_search, sample_anchors

logger = logging.getLogger(__name__)


def _cell_scores(delta, dmax, dmean, variant: Variant) -> np.ndarray:
    # dmax == 0 means every member sits on the anchor: score 0, not NaN
    with np.errstate(divide="ignore", invalid="ignore"):
        position = np.where(dmax > 0, delta / dmax, 0.0)
    if variant is Variant.DUAL_FACTOR:
        return position * dmean
    if variant is Variant.POSITION_ONLY:
        return position
    return np.array(dmean, dtype=np.float64, copy=True)


def partition_scores(partition: VoronoiPartition, variant: Variant = Variant.DUAL_FACTOR) -> tuple[np.ndarray, np.ndarray]:
    """Scores of every point in one partition.

    Returns:
        ``(scores, scored)`` where ``scored`` is False for points that sit
        alone in their cell; their entry in ``scores`` is 0 and must be
        ignored.
    """
    a = partition.assignment
    scores = _cell_scores(partition.delta, partition.cell_max[a], partition.cell_mean[a], Variant(variant))
    scored = partition.cell_count[a] > 1
    scores[~scored] = 0.0
    return scores, scored


def partition_score(partition: VoronoiPartition, point_index: int, variant: Variant = Variant.DUAL_FACTOR) -> float | None:
    """Score of a single point in one partition, or None for a singleton cell."""
    if not 0 <= point_index < partition.n:
        raise IndexError(f"point_index {point_index} out of range [0, {partition.n})")
    c = partition.assignment[point_index]
    if partition.cell_count[c] <= 1:
        return None
    s = _cell_scores(
        np.array([partition.delta[point_index]]),
        np.array([partition.cell_max[c]]),
        np.array([partition.cell_mean[c]]),
        Variant(variant),
    )
    return float(s[0])


@dataclass(frozen=True, eq=False)
class EnsembleMember:
    """Stored state of one partition, enough to score unseen points."""

    anchors: np.ndarray
    cell_max: np.ndarray
    cell_mean: np.ndarray
    cell_count: np.ndarray


def _clamped_m(config: DetectorConfig, n: int) -> int:
    m = config.effective_m(n)
    if m < config.m:
        warnings.warn(f"m clamped to {n} (requested {config.m}, dataset has {n} points)", SVEADWarning, stacklevel=3)
    return m


def _run(x: np.ndarray, config: DetectorConfig, threads: int, keep: bool, method: str = "auto"):
    n = x.shape[0]
    m = _clamped_m(config, n)
    search = NearestAnchorSearch(x, method=method)

    def one(k: int):
        idx = sample_anchors(n, m, derive_partition_seed(config.seed, k))
        part = partition_from_search(search, idx)
        scores, scored = partition_scores(part, config.variant)
        member = None
        if keep:
            member = EnsembleMember(x[idx], part.cell_max, part.cell_mean, part.cell_count)
        return scores, scored, member

    total = np.zeros(n)
    contributions = np.zeros(n, dtype=np.int64)
    members = []

    def reduce(result) -> None:
        scores, scored, member = result
        total[scored] += scores[scored]
        contributions[scored] += 1
        if member is not None:
            members.append(member)

    if threads <= 1:
        for k in range(config.t):
            reduce(one(k))
    else:
        # batches bound memory; results are folded in ascending partition order
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for start in range(0, config.t, 4 * threads):
                for result in pool.map(one, range(start, min(config.t, start + 4 * threads))):
                    reduce(result)
    return total, contributions, m, members


def _finalize(total: np.ndarray, contributions: np.ndarray, m: int, t: int) -> ScoreVector:
    scores = np.zeros_like(total)
    ok = contributions > 0
    scores[ok] = total[ok] / contributions[ok]
    if not ok.all():
        warnings.warn(
            f"{int((~ok).sum())} point(s) were singletons in every partition and received score 0",
            SVEADWarning,
            stacklevel=3,
        )
    return ScoreVector(scores, contributions, effective_m=m, t=t)


def fit_score(dataset: Dataset, config: DetectorConfig, threads: int = 1, method: str = "auto") -> ScoreVector:
    """Build ``config.t`` random partitions of ``dataset`` and score its points.

    Each point's score is the mean of its per-partition scores over the
    partitions in which it was not alone in its cell. Results depend only on
    the dataset and config, never on ``threads``.
    """
    if dataset.n < 1:
        raise ConfigError("empty dataset")
    x = prepare_features(dataset, config.normalize)
    total, contributions, m, _ = _run(x, config, threads, keep=False, method=method)
    return _finalize(total, contributions, m, config.t)


class SVEAD:
    """Estimator-style wrapper that keeps the fitted ensemble.

    ``fit`` scores the training data exactly like :func:`fit_score`.
    ``score_samples`` scores new points by locating each one's nearest stored
    anchor per partition and reusing that cell's statistics. Held-out scoring
    is experimental: a new point may lie beyond the cell radius, so
    position-only scores can exceed 1.
    """

    def __init__(self, m: int = 16, t: int = 100, seed: int = 0,
                 variant: Variant | str = Variant.DUAL_FACTOR,
                 normalize: Normalize | str = Normalize.NONE, threads: int = 1) -> None:
        self.config = DetectorConfig(m=m, t=t, seed=seed, variant=variant, normalize=normalize)
        self.threads = threads
        self.members_: list[EnsembleMember] | None = None
        self.train_scores_: ScoreVector | None = None

    def fit(self, data: Dataset | np.ndarray) -> SVEAD:
        dataset = data if isinstance(data, Dataset) else Dataset(data)
        x = dataset.features
        self._mu = x.mean(axis=0)
        self._sd = x.std(axis=0)
        x = prepare_features(dataset, self.config.normalize)
        total, contributions, m, members = _run(x, self.config, self.threads, keep=True)
        self.members_ = members
        self.train_scores_ = _finalize(total, contributions, m, self.config.t)
        logger.info("fitted %d partitions with m=%d on n=%d", self.config.t, m, dataset.n)
        return self

    def _transform(self, x: np.ndarray) -> np.ndarray:
        if self.config.normalize is Normalize.NONE:
            return x
        out = np.zeros_like(x)
        ok = self._sd > 0
        out[:, ok] = (x[:, ok] - self._mu[ok]) / self._sd[ok]
        return out

    def score_samples(self, data: Dataset | np.ndarray) -> ScoreVector:
        if self.members_ is None:
            raise ConfigError("SVEAD instance is not fitted")
        dataset = data if isinstance(data, Dataset) else Dataset(data)
        x = self._transform(dataset.features)
        total = np.zeros(dataset.n)
        contributions = np.zeros(dataset.n, dtype=np.int64)
        for member in self.members_:
            a = _exact_nearest(x, member.anchors)
            diff = x - member.anchors[a]
            delta = np.sqrt(np.einsum("ij,ij->i", diff, diff))
            scores = _cell_scores(delta, member.cell_max[a], member.cell_mean[a], self.config.variant)
            scored = member.cell_count[a] > 1
            total[scored] += scores[scored]
            contributions[scored] += 1
        return _finalize(total, contributions, len(self.members_[0].anchors), self.config.t)
