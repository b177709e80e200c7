"""AUC-ROC, average precision, and the repeated-run evaluation protocol."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigError, Dataset, DetectorConfig, SVEADError, derive_partition_seed
from .scoring import fit_score


class UndefinedMetricError(SVEADError, ValueError):
    """Raised when labels contain a single class."""


def _check(scores, labels) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(scores, dtype=np.float64).ravel()
    y = np.asarray(labels).ravel()
    if s.shape != y.shape:
        raise ValueError(f"scores and labels differ in length: {s.size} vs {y.size}")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must be 0 or 1")
    y = y.astype(bool)
    n_pos = int(y.sum())
    if n_pos == 0 or n_pos == y.size:
        raise UndefinedMetricError("AUC is undefined when labels contain only one class")
    return s, y


def _tie_groups(sorted_scores: np.ndarray) -> np.ndarray:
    """Start offsets of runs of equal values, plus a final sentinel."""
    starts = np.flatnonzero(np.diff(sorted_scores)) + 1
    return np.concatenate(([0], starts, [sorted_scores.size]))


def auc_roc(scores, labels) -> float:
    """Area under the ROC curve as the normalized Mann-Whitney U statistic.

    Tied scores receive their average rank, so a tied positive/negative pair
    counts one half.
    """
    s, y = _check(scores, labels)
    order = np.argsort(s, kind="mergesort")
    bounds = _tie_groups(s[order])
    sizes = np.diff(bounds)
    # 1-based average rank of each tie block
    avg_rank = (bounds[:-1] + bounds[1:] + 1) / 2.0
    ranks = np.empty(s.size)
    ranks[order] = np.repeat(avg_rank, sizes)
    n_pos = int(y.sum())
    n_neg = s.size - n_pos
    u = ranks[y].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))


def auc_pr(scores, labels) -> float:
    """Average precision.

    Positives are visited in descending score order and the precision at each
    cut is weighted by the recall gained there. A block of tied scores is one
    cut: all its members enter together.
    """
    s, y = _check(scores, labels)
    order = np.argsort(-s, kind="mergesort")
    ys = y[order]
    bounds = _tie_groups(-s[order])
    tp = np.cumsum(ys)[bounds[1:] - 1]
    gained = np.diff(np.concatenate(([0], tp)))
    precision = tp / bounds[1:]
    return float((gained * precision).sum() / tp[-1])


@dataclass(frozen=True)
class EvalReport:
    roc_mean: float
    roc_std: float
    pr_mean: float
    pr_std: float
    roc_runs: tuple[float, ...]
    pr_runs: tuple[float, ...]

    @property
    def runs(self) -> int:
        return len(self.roc_runs)


def _sample_std(values: list[float]) -> float:
    # identical runs must report exactly 0, which np.std does not guarantee
    if len(values) < 2 or min(values) == max(values):
        return 0.0
    return float(np.std(values, ddof=1))


def run_seed(master_seed: int, run: int) -> int:
    return derive_partition_seed(master_seed, run)


def repeated_eval(dataset: Dataset, config: DetectorConfig, runs: int = 5,
                  threads: int = 1, vary_seed: bool = True) -> EvalReport:
    """Score ``dataset`` ``runs`` times and summarize both AUCs.

    Run ``r`` uses master seed ``run_seed(config.seed, r)``; with
    ``vary_seed=False`` every run reuses ``config.seed``.
    """
    if not dataset.is_labeled:
        raise ConfigError(f"dataset {dataset.name!r} has no labels; evaluation needs labels")
    if runs < 1:
        raise ConfigError(f"runs must be >= 1, got {runs}")
    if dataset.labels.min() == dataset.labels.max():
        raise UndefinedMetricError(f"dataset {dataset.name!r} has a single label class; AUC is undefined")
    roc, pr = [], []
    for r in range(runs):
        seed = run_seed(config.seed, r) if vary_seed else config.seed
        cfg = DetectorConfig(config.m, config.t, seed, config.variant, config.normalize)
        sv = fit_score(dataset, cfg, threads=threads)
        roc.append(auc_roc(sv.scores, dataset.labels))
        pr.append(auc_pr(sv.scores, dataset.labels))
    return EvalReport(float(np.mean(roc)), _sample_std(roc), float(np.mean(pr)), _sample_std(pr),
                      tuple(roc), tuple(pr))
