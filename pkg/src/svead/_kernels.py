"""Compiled inner loops."""

import numba as nb
import numpy as np


@nb.njit(cache=True, nogil=True)
def cell_statistics(assignment, delta, m):
    """Per-cell max, mean and count of ``delta``.

    The sum behind each mean is Neumaier-compensated and accumulated in
    point order, so the result does not depend on how callers chunk work.
    """
    cell_max = np.zeros(m)
    total = np.zeros(m)
    comp = np.zeros(m)
    count = np.zeros(m, dtype=np.int64)
    for i in range(assignment.shape[0]):
        c = assignment[i]
        v = delta[i]
        if v > cell_max[c]:
            cell_max[c] = v
        s = total[c]
        t = s + v
        if abs(s) >= abs(v):
            comp[c] += (s - t) + v
        else:
            comp[c] += (v - t) + s
        total[c] = t
        count[c] += 1
    cell_mean = np.zeros(m)
    for c in range(m):
        if count[c] > 0:
            cell_mean[c] = (total[c] + comp[c]) / count[c]
    return cell_max, cell_mean, count


@nb.njit(cache=True, nogil=True, fastmath=True, boundscheck=False)
def count_within(scores, best, margin, out):
    """Per row, how many entries are <= the row's best entry plus ``margin``."""
    for r in range(scores.shape[0]):
        row = scores[r]
        cut = np.float32(row[best[r]] + margin[r])
        c = np.int32(0)
        for j in range(row.shape[0]):
            c += np.int32(row[j] <= cut)
        out[r] = c


@nb.njit(cache=True, nogil=True)
def assigned_distance(x, anchors, assignment):
    n, d = x.shape
    out = np.empty(n)
    for i in range(n):
        a = assignment[i]
        acc = 0.0
        for k in range(d):
            diff = x[i, k] - anchors[a, k]
            acc += diff * diff
        out[i] = np.sqrt(acc)
    return out
