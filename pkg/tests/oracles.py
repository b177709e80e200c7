"""Independent reference implementations used only by the tests.

Everything here is written for clarity, not speed, and shares no code with
the package beyond anchor sampling (the RNG contract itself).
"""

import math

import numpy as np


def brute_nearest(x, anchor_rows):
    """Per point: position of the nearest anchor (first on ties) and its distance."""
    assignment, delta = [], []
    for p in x:
        best_j, best_d2 = 0, math.inf
        for j, a in enumerate(anchor_rows):
            d2 = sum((float(pi) - float(ai)) ** 2 for pi, ai in zip(p, a))
            if d2 < best_d2:
                best_j, best_d2 = j, d2
        assignment.append(best_j)
        delta.append(math.sqrt(best_d2))
    return np.array(assignment), np.array(delta)


def brute_partition_scores(x, anchor_idx, variant="dual-factor"):
    """Per-point scores of one partition; None marks a skipped singleton."""
    anchors = x[anchor_idx]
    assignment, delta = brute_nearest(x, anchors)
    scores = []
    for i in range(len(x)):
        members = [k for k in range(len(x)) if assignment[k] == assignment[i]]
        if len(members) == 1:
            scores.append(None)
            continue
        dmax = max(delta[k] for k in members)
        dmean = math.fsum(delta[k] for k in members) / len(members)
        pos = delta[i] / dmax if dmax > 0 else 0.0
        scores.append({"dual-factor": pos * dmean, "position-only": pos, "mean-only": dmean}[variant])
    return scores


def naive_svead(x, m, t, anchor_sets, variant="dual-factor"):
    """Direct transcription of the two-phase algorithm.

    Phase one stores per-cell max/mean distances; phase two recomputes each
    point's nearest anchor per partition before scoring it, and averages over
    the partitions in which the point was not alone in its cell.
    """
    x = np.asarray(x, dtype=float)
    n = len(x)
    stats = []
    for idx in anchor_sets:
        anchors = x[idx]
        cells = [[] for _ in idx]
        for i in range(n):
            dist = np.sqrt(((anchors - x[i]) ** 2).sum(axis=1))
            cells[int(np.argmin(dist))].append(float(dist.min()))
        stats.append([(max(c) if c else 0.0, math.fsum(c) / len(c) if c else 0.0, len(c)) for c in cells])

    f = np.zeros(n)
    contributions = np.zeros(n, dtype=int)
    for i in range(n):
        total, used = 0.0, 0
        for idx, cell_stats in zip(anchor_sets, stats):
            anchors = x[idx]
            dist = np.sqrt(((anchors - x[i]) ** 2).sum(axis=1))
            j = int(np.argmin(dist))
            dmax, dmean, count = cell_stats[j]
            if count == 1:
                continue
            pos = dist[j] / dmax if dmax > 0 else 0.0
            total += {"dual-factor": pos * dmean, "position-only": pos, "mean-only": dmean}[variant]
            used += 1
        f[i] = total / used if used else 0.0
        contributions[i] = used
    return f, contributions


def pair_count_auc(scores, labels):
    pos = [s for s, y in zip(scores, labels) if y == 1]
    neg = [s for s, y in zip(scores, labels) if y == 0]
    wins = 0.0
    for p in pos:
        for q in neg:
            wins += 1.0 if p > q else 0.5 if p == q else 0.0
    return wins / (len(pos) * len(neg))


def rank_by_rank_ap(scores, labels):
    """Mean over positives of the precision at the positive's rank (no ties assumed)."""
    order = sorted(range(len(scores)), key=lambda i: -scores[i])
    hits, total = 0, 0.0
    for rank, i in enumerate(order, start=1):
        if labels[i] == 1:
            hits += 1
            total += hits / rank
    return total / hits


def threshold_ap(scores, labels):
    """Average precision by enumerating thresholds: sum of recall steps times precision."""
    n_pos = sum(labels)
    ap, prev_recall = 0.0, 0.0
    for tau in sorted(set(scores), reverse=True):
        flagged = [y for s, y in zip(scores, labels) if s >= tau]
        tp = sum(flagged)
        recall = tp / n_pos
        ap += (recall - prev_recall) * (tp / len(flagged))
        prev_recall = recall
    return ap
