"""Parameter sweeps, contamination and ablation studies, and the runtime benchmark."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from .core import ConfigError, Dataset, DetectorConfig, Variant
from .metrics import EvalReport, repeated_eval
from .scoring import fit_score

DEFAULT_M_GRID = tuple(2**k for k in range(1, 9))
DEFAULT_T_GRID = (100,)
DEFAULT_RATES = (0.05, 0.10, 0.20, 0.30)


@dataclass(frozen=True)
class SweepRow:
    m: int
    t: int
    report: EvalReport


def sweep(dataset: Dataset, config: DetectorConfig, m_grid=DEFAULT_M_GRID, t_grid=DEFAULT_T_GRID,
          runs: int = 5, threads: int = 1) -> list[SweepRow]:
    """Evaluate every (m, t) pair of the cross product, m-major."""
    if not m_grid or not t_grid:
        raise ConfigError("grids must be non-empty")
    rows = []
    for m in m_grid:
        for t in t_grid:
            cfg = replace(config, m=int(m), t=int(t))
            rows.append(SweepRow(int(m), int(t), repeated_eval(dataset, cfg, runs, threads=threads)))
    return rows


@dataclass(frozen=True)
class ContaminationRow:
    rate: float
    n_anomalies: int
    report: EvalReport | None
    error: str = ""


def anomalies_for_rate(n_normal: int, rate: float) -> int:
    """Anomaly count that makes ``rate`` of a sample that keeps all normals."""
    return int(round(rate * n_normal / (1.0 - rate)))


def contaminate(dataset: Dataset, config: DetectorConfig, rates=DEFAULT_RATES, runs: int = 5,
                threads: int = 1) -> list[ContaminationRow]:
    """Re-evaluate with the anomaly share subsampled to each rate.

    All normal points are kept. When a rate already matches the dataset, the
    dataset is used unchanged, so that row equals a plain evaluation.
    """
    if not dataset.is_labeled:
        raise ConfigError(f"dataset {dataset.name!r} has no labels")
    normal = np.flatnonzero(dataset.labels == 0)
    anomalous = np.flatnonzero(dataset.labels == 1)
    rows = []
    for rate in rates:
        rate = float(rate)
        if not 0.0 < rate < 1.0:
            rows.append(ContaminationRow(rate, 0, None, f"rate {rate} outside (0, 1)"))
            continue
        k = anomalies_for_rate(normal.size, rate)
        if k < 1 or k > anomalous.size:
            rows.append(ContaminationRow(rate, k, None, f"needs {k} anomalies, dataset has {anomalous.size}"))
            continue
        if k == anomalous.size:
            sub = dataset
        else:
            rng = np.random.default_rng((config.seed, round(rate * 1_000_000)))
            chosen = rng.choice(anomalous, size=k, replace=False)
            sub = dataset.subset(np.sort(np.r_[normal, chosen]), f"{dataset.name}@{rate:g}")
        rows.append(ContaminationRow(rate, k, repeated_eval(sub, config, runs, threads=threads)))
    return rows


def ablation(dataset: Dataset, config: DetectorConfig, runs: int = 5, threads: int = 1) -> dict[Variant, EvalReport]:
    return {v: repeated_eval(dataset, replace(config, variant=v), runs, threads=threads) for v in Variant}


@dataclass(frozen=True)
class BenchRow:
    n: int
    d: int
    m: int
    t: int
    seconds: float


def loglog_slope(n: list[int], seconds: list[float]) -> float | None:
    """Least-squares slope of log(seconds) against log(n); None with fewer than two sizes."""
    if len(set(n)) < 2:
        return None
    slope, _ = np.polyfit(np.log(n), np.log(seconds), 1)
    return float(slope)


def benchmark(n_list, d_list=(10,), m: int = 256, t: int = 100, seed: int = 0,
              threads: int = 1) -> tuple[list[BenchRow], dict[int, float | None]]:
    """Time ``fit_score`` on uniform random data for every (n, d).

    Returns the timing rows and, per dimensionality, the log-log slope of
    runtime against n.
    """
    # compile kernels and warm caches outside the timed region
    fit_score(Dataset(np.random.default_rng(seed).random((2048, 2))), DetectorConfig(m=8, t=2, seed=seed))
    rows = []
    slopes = {}
    for d in d_list:
        for n in n_list:
            x = np.random.default_rng((seed, int(n), int(d))).random((int(n), int(d)))
            ds = Dataset(x)
            start = time.perf_counter()
            fit_score(ds, DetectorConfig(m=m, t=t, seed=seed), threads=threads)
            rows.append(BenchRow(int(n), int(d), min(m, int(n)), t, time.perf_counter() - start))
        sized = [r for r in rows if r.d == d]
        slopes[int(d)] = loglog_slope([r.n for r in sized], [r.seconds for r in sized])
    return rows, slopes
