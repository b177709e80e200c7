"""Domain types and seed derivation shared across the package."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

MASK64 = (1 << 64) - 1
SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


class SVEADError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(SVEADError, ValueError):
    """Invalid detector configuration or unusable input."""


class SVEADWarning(UserWarning):
    """Non-fatal diagnostic (clamped parameters, unscored points)."""


class Variant(str, enum.Enum):
    """Per-partition scoring rule."""

    DUAL_FACTOR = "dual-factor"
    POSITION_ONLY = "position-only"
    MEAN_ONLY = "mean-only"


class Normalize(str, enum.Enum):
    NONE = "none"
    ZSCORE = "zscore"


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Dataset:
    """An n x d feature matrix with optional 0/1 anomaly labels."""

    features: np.ndarray
    labels: np.ndarray | None = None
    name: str = "dataset"

    def __post_init__(self) -> None:
        x = np.array(self.features, dtype=np.float64, order="C", copy=True)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        if x.ndim != 2:
            raise ConfigError(f"features must be 2-D, got shape {x.shape}")
        if x.shape[0] < 1 or x.shape[1] < 1:
            raise ConfigError(f"dataset must have n >= 1 and d >= 1, got shape {x.shape}")
        if not np.isfinite(x).all():
            r, c = np.argwhere(~np.isfinite(x))[0]
            raise ConfigError(f"non-finite feature value at row {r}, column {c}")
        object.__setattr__(self, "features", _readonly(x))

        if self.labels is not None:
            y = np.asarray(self.labels)
            if y.shape != (x.shape[0],):
                raise ConfigError(
                    f"labels must have length {x.shape[0]}, got shape {y.shape}"
                )
            if not np.isin(y, (0, 1)).all():
                raise ConfigError("labels must contain only 0 and 1")
            object.__setattr__(self, "labels", _readonly(y.astype(np.int8)))

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    @property
    def is_labeled(self) -> bool:
        return self.labels is not None

    def subset(self, rows: np.ndarray, name: str | None = None) -> Dataset:
        labels = None if self.labels is None else self.labels[rows]
        return Dataset(self.features[rows], labels, name or self.name)


@dataclass(frozen=True)
class DetectorConfig:
    m: int = 16
    t: int = 100
    seed: int = 0
    variant: Variant = Variant.DUAL_FACTOR
    normalize: Normalize = Normalize.NONE

    def __post_init__(self) -> None:
        if int(self.m) < 1:
            raise ConfigError(f"m must be >= 1, got {self.m}")
        if int(self.t) < 1:
            raise ConfigError(f"t must be >= 1, got {self.t}")
        if not 0 <= int(self.seed) <= MASK64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "t", int(self.t))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "normalize", Normalize(self.normalize))

    def effective_m(self, n: int) -> int:
        return min(self.m, n)


@dataclass(frozen=True, eq=False)
class VoronoiPartition:
    """One ensemble member: anchors, cell membership and per-cell statistics.

    Attributes:
        anchor_indices: Row indices of the anchors, in sampling order. The
            position of an anchor in this vector is its cell index.
        assignment: Cell index of every point.
        delta: Euclidean distance of every point to its assigned anchor.
        cell_max: Largest ``delta`` in each cell.
        cell_mean: Mean ``delta`` in each cell.
        cell_count: Number of points in each cell.
    """

    anchor_indices: np.ndarray
    assignment: np.ndarray
    delta: np.ndarray
    cell_max: np.ndarray
    cell_mean: np.ndarray
    cell_count: np.ndarray

    def __post_init__(self) -> None:
        for f in ("anchor_indices", "assignment", "delta", "cell_max", "cell_mean", "cell_count"):
            _readonly(getattr(self, f))

    @property
    def m(self) -> int:
        return len(self.anchor_indices)

    @property
    def n(self) -> int:
        return len(self.assignment)


@dataclass(frozen=True, eq=False)
class ScoreVector:
    scores: np.ndarray
    contributions: np.ndarray
    effective_m: int = 0
    t: int = 0
    extra: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        _readonly(self.scores)
        _readonly(self.contributions)

    def __len__(self) -> int:
        return len(self.scores)


def splitmix64(state: int) -> int:
    """SplitMix64 output function (Steele, Lea & Flood, 2014) applied to ``state``."""
    z = state & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_partition_seed(master_seed: int, partition_index: int) -> int:
    """Seed for one partition: the ``partition_index``-th SplitMix64 output.

    Equivalent to seeding a SplitMix64 generator with ``master_seed`` and
    drawing ``partition_index + 1`` values, but random access. The map is a
    bijection of the index for a fixed master seed, so derived seeds never
    collide within a run.
    """
    if partition_index < 0:
        raise ConfigError(f"partition_index must be >= 0, got {partition_index}")
    state = (master_seed + (partition_index + 1) * SPLITMIX_GAMMA) & MASK64
    return splitmix64(state)


def zscore(x: np.ndarray) -> np.ndarray:
    """Per-feature standardization; zero-variance features become 0."""
    mu = x.mean(axis=0)
    sd = x.std(axis=0)
    out = np.zeros_like(x)
    ok = sd > 0
    out[:, ok] = (x[:, ok] - mu[ok]) / sd[ok]
    return out


def prepare_features(dataset: Dataset, normalize: Normalize) -> np.ndarray:
    if Normalize(normalize) is Normalize.ZSCORE:
        return zscore(dataset.features)
    return dataset.features
