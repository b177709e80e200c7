"""Stochastic Voronoi ensemble anomaly scoring."""

from .core import (
    ConfigError,
    Dataset,
    DetectorConfig,
    Normalize,
    ScoreVector,
    SVEADError,
    SVEADWarning,
    Variant,
    VoronoiPartition,
    derive_partition_seed,
)
from .io import IngestionError, load_csv, read_scores, write_scores
from .metrics import EvalReport, UndefinedMetricError, auc_pr, auc_roc, repeated_eval
from .partition import NearestAnchorSearch, build_partition, sample_anchors
from .scoring import SVEAD, fit_score, partition_score, partition_scores
from .synth import gen_dependency_s3, gen_global_s1, gen_local_s2, gen_two_density

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Dataset",
    "DetectorConfig",
    "EvalReport",
    "IngestionError",
    "NearestAnchorSearch",
    "Normalize",
    "SVEAD",
    "SVEADError",
    "SVEADWarning",
    "ScoreVector",
    "UndefinedMetricError",
    "Variant",
    "VoronoiPartition",
    "auc_pr",
    "auc_roc",
    "build_partition",
    "derive_partition_seed",
    "fit_score",
    "gen_dependency_s3",
    "gen_global_s1",
    "gen_local_s2",
    "gen_two_density",
    "load_csv",
    "partition_score",
    "partition_scores",
    "read_scores",
    "repeated_eval",
    "sample_anchors",
    "write_scores",
]
