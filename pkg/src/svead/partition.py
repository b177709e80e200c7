"""Random Voronoi partitions: anchor sampling, nearest-anchor assignment, cell statistics.

Nearest-anchor search is a brute-force scan over all anchors. For large
problems the scan runs as a float32 matrix product on centered data, and
every row whose best and second-best candidates are closer than a rigorous
rounding-error bound is re-resolved in float64. The resulting assignment is
the exact float64 argmin, with ties going to the lowest anchor position.
"""

from __future__ import annotations

import math
import threading

import numpy as np

from ._kernels import assigned_distance, cell_statistics, count_within
from .core import ConfigError, Dataset, VoronoiPartition

# Problems with n * m * d at or below this use the direct float64 scan.
EXACT_WORK_LIMIT = 1 << 20
# Target size in bytes of one float32 block of screening scores.
SCREEN_BLOCK_BYTES = 1 << 19

_EPS32 = float(np.finfo(np.float32).eps)


def sample_anchors(dataset: Dataset | int, m: int, seed: int) -> np.ndarray:
    """Draw ``min(m, n)`` distinct row indices uniformly without replacement.

    The order of the returned indices is the sampling order; it fixes the
    cell numbering and the tie-break of the partition built from it.
    """
    n = dataset if isinstance(dataset, int) else dataset.n
    if n < 1:
        raise ConfigError("cannot sample anchors from an empty dataset")
    if m < 1:
        raise ConfigError(f"m must be >= 1, got {m}")
    rng = np.random.default_rng(seed)
    return rng.choice(n, size=min(m, n), replace=False).astype(np.int64)


def _first_occurrences(anchors: np.ndarray) -> np.ndarray:
    """Positions of anchors whose coordinates do not repeat an earlier anchor."""
    _, first = np.unique(anchors, axis=0, return_index=True)
    return np.sort(first)


def _exact_nearest(x: np.ndarray, anchors: np.ndarray, block: int = 4096) -> np.ndarray:
    """Exact float64 argmin of squared distances; first minimum wins."""
    out = np.empty(x.shape[0], dtype=np.int64)
    rows = max(1, block // max(1, anchors.shape[0]))
    for s in range(0, x.shape[0], rows):
        diff = x[s : s + rows, None, :] - anchors[None, :, :]
        out[s : s + rows] = np.einsum("ijk,ijk->ij", diff, diff).argmin(axis=1)
    return out


class NearestAnchorSearch:
    """Reusable nearest-anchor search over a fixed feature matrix.

    Preprocessing (centering, power-of-two rescaling, float32 copy) is done
    once, so building many partitions over the same data only pays for the
    scans.

    Args:
        features: n x d float64 matrix.
        method: ``"auto"``, ``"exact"`` or ``"screened"``. ``auto`` picks the
            direct scan for small problems.
    """

    def __init__(self, features: np.ndarray, method: str = "auto") -> None:
        if method not in ("auto", "exact", "screened"):
            raise ValueError(f"unknown method {method!r}")
        self.x = np.ascontiguousarray(features, dtype=np.float64)
        self.method = method
        self._xs: np.ndarray | None = None
        self._xnorm: np.ndarray | None = None
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def d(self) -> int:
        return self.x.shape[1]

    def _prepare_screen(self) -> None:
        with self._lock:
            if self._xs is None:
                self._build_screen()

    def _build_screen(self) -> None:
        xc = self.x - self.x.mean(axis=0)
        peak = float(np.abs(xc).max())
        if peak > 0:
            # exact power-of-two scaling keeps float32 values inside [-1, 1]
            xc *= math.ldexp(1.0, -math.frexp(peak)[1])
        xs = np.empty((self.n, self.d + 1), dtype=np.float32)
        xs[:, : self.d] = xc
        xs[:, self.d] = 1.0
        self._xnorm = np.sqrt(np.einsum("ij,ij->i", xs[:, : self.d], xs[:, : self.d], dtype=np.float64))
        self._xs = xs

    def _use_screen(self, m: int) -> bool:
        if self.method == "exact":
            return False
        if self.method == "screened":
            return True
        return self.n * m * self.d > EXACT_WORK_LIMIT

    def assign(self, anchor_indices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Cell index and distance to the assigned anchor for every point."""
        anchors = self.x[anchor_indices]
        m = anchors.shape[0]
        if m == 1:
            assignment = np.zeros(self.n, dtype=np.int64)
        elif not self._use_screen(m):
            assignment = _exact_nearest(self.x, anchors)
        else:
            assignment = self._screened(anchor_indices, anchors)
        return assignment, assigned_distance(self.x, anchors, assignment)

    def _screened(self, anchor_indices: np.ndarray, anchors: np.ndarray) -> np.ndarray:
        self._prepare_screen()
        xs, xnorm, d = self._xs, self._xnorm, self.d
        keep = _first_occurrences(anchors)
        if len(keep) == 1:
            return np.full(self.n, keep[0], dtype=np.int64)

        a = xs[anchor_indices[keep], :d]
        anorm2 = np.einsum("ij,ij->i", a, a, dtype=np.float64)
        w = np.empty((d + 1, len(keep)), dtype=np.float32)
        w[:d] = -2.0 * a.T
        w[d] = anorm2
        amax = math.sqrt(float(anorm2.max()))
        # bound on |float32 score - exact score|, with a factor-2 margin
        tol = (d + 8) * _EPS32 * (2.0 * xnorm * amax + amax * amax) + (d + 8) * 1e-44

        out = np.empty(self.n, dtype=np.int64)
        rows = min(self.n, max(256, SCREEN_BLOCK_BYTES // (4 * len(keep))))
        buf = np.empty((rows, len(keep)), dtype=np.float32)
        near = np.empty(rows, dtype=np.int32)
        margin = (2.0 * tol).astype(np.float32)
        for s in range(0, self.n, rows):
            e = min(self.n, s + rows)
            block = buf[: e - s]
            np.matmul(xs[s:e], w, out=block)
            best = block.argmin(axis=1)
            count_within(block, best, margin[s:e], near)
            out[s:e] = keep[best]
            unsure = np.flatnonzero(near[: e - s] > 1)
            if unsure.size:
                out[s + unsure] = _exact_nearest(self.x[s + unsure], anchors)
        return out


def _validate_anchors(anchor_indices: np.ndarray, n: int) -> np.ndarray:
    idx = np.asarray(anchor_indices, dtype=np.int64).ravel()
    if idx.size < 1:
        raise ConfigError("at least one anchor is required")
    if idx.min() < 0 or idx.max() >= n:
        raise ConfigError(f"anchor indices must lie in [0, {n})")
    if np.unique(idx).size != idx.size:
        raise ConfigError("anchor indices must be distinct")
    return idx


def partition_from_search(search: NearestAnchorSearch, anchor_indices: np.ndarray) -> VoronoiPartition:
    idx = _validate_anchors(anchor_indices, search.n)
    assignment, delta = search.assign(idx)
    cell_max, cell_mean, cell_count = cell_statistics(assignment, delta, idx.size)
    # a cell can only be empty when its anchor duplicates an earlier anchor
    empty = np.flatnonzero(cell_count == 0)
    if empty.size:
        assert not np.isin(empty, _first_occurrences(search.x[idx])).any(), "empty cell for a unique anchor"
    return VoronoiPartition(idx, assignment, delta, cell_max, cell_mean, cell_count)


def build_partition(dataset: Dataset, anchor_indices: np.ndarray) -> VoronoiPartition:
    """Assign every point of ``dataset`` to its nearest anchor and summarize the cells."""
    return partition_from_search(NearestAnchorSearch(dataset.features), anchor_indices)
