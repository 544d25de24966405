"""Evaluation methodology: metrics, average ranks, pairwise signed-rank
tests with Holm correction, and clique formation."""

import math

import numpy as np

__all__ = [
    "accuracy",
    "balanced_accuracy",
    "auroc",
    "negative_log_likelihood",
    "compute_metrics",
    "wilcoxon_signed_rank",
    "holm_correction",
    "average_ranks",
    "ranks_and_cliques",
]

NLL_CLAMP = 1e-16


def accuracy(true_labels, pred_labels):
    true_labels = np.asarray(true_labels)
    pred_labels = np.asarray(pred_labels)
    return float((true_labels == pred_labels).mean())


def balanced_accuracy(true_labels, pred_labels):
    """Mean per-class recall over the classes present in the test set."""
    true_labels = np.asarray(true_labels)
    pred_labels = np.asarray(pred_labels)
    recalls = []
    for c in np.unique(true_labels):
        mask = true_labels == c
        recalls.append((pred_labels[mask] == c).mean())
    return float(np.mean(recalls))


def _binary_auroc(scores, positives):
    """Trapezoidal AUROC via average ranks; ties count half."""
    scores = np.asarray(scores, dtype=np.float64)
    positives = np.asarray(positives, dtype=bool)
    n_pos = int(positives.sum())
    n_neg = len(positives) - n_pos
    if n_pos == 0 or n_neg == 0:
        return 0.5
    ranks = _average_rank_1d(scores)
    return float((ranks[positives].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg))


def _average_rank_1d(values):
    """Ranks 1..n with ties averaged, smallest value rank 1."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def auroc(true_labels, probabilities, train_class_freq):
    """AUROC weighted by train class frequency.

    Binary problems score the minority class (by train frequency) as the
    positive outcome; multiclass problems average one-vs-rest AUROC per class
    weighted by the train class frequencies.
    """
    true_labels = np.asarray(true_labels)
    probabilities = np.asarray(probabilities, dtype=np.float64)
    freq = np.asarray(train_class_freq, dtype=np.float64)
    for c in np.unique(true_labels):
        if freq[c] == 0:
            raise ValueError(f"class {c} in test has zero train frequency")
    if len(freq) == 2:
        pos = int(freq.argmin())
        return _binary_auroc(probabilities[:, pos], true_labels == pos)
    weights = freq / freq.sum()
    total = 0.0
    for c in range(len(freq)):
        total += weights[c] * _binary_auroc(probabilities[:, c], true_labels == c)
    return float(total)


def negative_log_likelihood(true_labels, probabilities):
    """Mean -ln p(true class), with p clamped to [1e-16, 1]."""
    probabilities = np.asarray(probabilities, dtype=np.float64)
    p = probabilities[np.arange(len(true_labels)), np.asarray(true_labels)]
    return float(-np.log(np.clip(p, NLL_CLAMP, 1.0)).mean())


def compute_metrics(true_labels, pred_labels, probabilities, train_class_freq):
    return {
        "acc": accuracy(true_labels, pred_labels),
        "balacc": balanced_accuracy(true_labels, pred_labels),
        "auroc": auroc(true_labels, probabilities, train_class_freq),
        "nll": negative_log_likelihood(true_labels, probabilities),
    }


EXACT_LIMIT = 25


def _signed_rank_statistic(diffs):
    """Drop zero differences, rank |d| with ties averaged, return the sum of
    ranks of positive differences plus the rank vector."""
    diffs = np.asarray(diffs, dtype=np.float64)
    diffs = diffs[diffs != 0.0]
    ranks = _average_rank_1d(np.abs(diffs))
    return float(ranks[diffs > 0].sum()), ranks


def _exact_signed_rank_p(w_plus, ranks):
    """Two-sided p by full enumeration of sign assignments.

    Uses the polynomial-convolution form over doubled (integer) ranks, which
    is equivalent to summing over all 2^n assignments.
    """
    doubled = np.rint(2 * ranks).astype(np.int64)
    total = int(doubled.sum())
    dist = np.zeros(total + 1)
    dist[0] = 1.0
    for r in doubled:
        shifted = np.zeros_like(dist)
        shifted[r:] = dist[: len(dist) - r]
        dist = dist + shifted
    dist /= 2.0 ** len(doubled)
    t = int(round(2 * w_plus))
    lo = min(t, total - t)
    hi = max(t, total - t)
    p = dist[: lo + 1].sum() + dist[hi:].sum()
    if lo == hi:
        p -= dist[lo]
    return float(min(1.0, p))


def _normal_signed_rank_p(w_plus, ranks):
    n = len(ranks)
    mean = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0
    # Tie correction: subtract sum(t^3 - t)/48 over tie groups.
    _, counts = np.unique(ranks, return_counts=True)
    var -= ((counts**3 - counts).sum()) / 48.0
    if var <= 0:
        return 1.0
    z = (abs(w_plus - mean) - 0.5) / math.sqrt(var)
    z = max(z, 0.0)
    return float(min(1.0, math.erfc(z / math.sqrt(2.0))))


def wilcoxon_signed_rank(a, b=None):
    """Two-sided Wilcoxon signed-rank p-value for paired samples.

    Pass paired metric vectors (a, b) or a single difference vector. Zero
    differences are dropped; the exact distribution is used for up to 25
    informative pairs, a tie- and continuity-corrected normal approximation
    beyond that. All-zero differences give p = 1.
    """
    diffs = np.asarray(a, dtype=np.float64)
    if b is not None:
        diffs = diffs - np.asarray(b, dtype=np.float64)
    w_plus, ranks = _signed_rank_statistic(diffs)
    if len(ranks) == 0:
        return 1.0
    if len(ranks) <= EXACT_LIMIT:
        return _exact_signed_rank_p(w_plus, ranks)
    return _normal_signed_rank_p(w_plus, ranks)


def holm_correction(p_values, alpha):
    """Step-down Holm procedure; returns rejection flags in input order."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    p_values = np.asarray(p_values, dtype=np.float64)
    m = len(p_values)
    order = np.argsort(p_values, kind="stable")
    reject = np.zeros(m, dtype=bool)
    for i, idx in enumerate(order):
        if p_values[idx] <= alpha / (m - i):
            reject[idx] = True
        else:
            break
    return reject


def average_ranks(metric_matrix, higher_is_better=True):
    """Per-dataset ranks with ties averaged (rank 1 = best), then averaged.

    ``metric_matrix`` is (n_datasets, n_classifiers). Returns (rank matrix,
    average rank per classifier).
    """
    M = np.asarray(metric_matrix, dtype=np.float64)
    signed = -M if higher_is_better else M
    ranks = np.vstack([_average_rank_1d(row) for row in signed])
    return ranks, ranks.mean(axis=0)


def ranks_and_cliques(metric_matrix, alpha=0.05, higher_is_better=True):
    """Average ranks plus maximal cliques of not-significantly-different
    classifiers.

    The pairwise Wilcoxon signed-rank tests are computed on per-dataset rank
    differences rather than raw metric differences, so the whole comparison
    depends only on the order of the classifiers within each dataset; any
    order-preserving transform of the metric leaves the p-values, Holm
    rejections and cliques unchanged. Cliques are maximal rank-contiguous
    groups containing no rejected pair. Returns (average ranks, cliques as
    tuples of classifier indices, pairwise p matrix, rejection matrix).
    """
    M = np.asarray(metric_matrix, dtype=np.float64)
    n_datasets, k = M.shape
    if k < 2 or n_datasets < 2:
        raise ValueError("need at least 2 classifiers and 2 datasets")
    R, avg = average_ranks(M, higher_is_better)

    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    p_values = np.array([wilcoxon_signed_rank(R[:, i], R[:, j]) for i, j in pairs])
    rejected_flags = holm_correction(p_values, alpha)
    p_matrix = np.ones((k, k))
    rejected = np.zeros((k, k), dtype=bool)
    for (i, j), p, r in zip(pairs, p_values, rejected_flags):
        p_matrix[i, j] = p_matrix[j, i] = p
        rejected[i, j] = rejected[j, i] = r

    order = np.argsort(avg, kind="stable")
    cliques = []
    for start in range(k):
        end = start
        while end + 1 < k:
            nxt = order[end + 1]
            if any(rejected[order[t], nxt] for t in range(start, end + 1)):
                break
            end += 1
        group = tuple(sorted(order[start : end + 1]))
        if len(group) > 1 and not any(set(group) <= set(c) for c in cliques):
            cliques.append(group)
    return avg, cliques, p_matrix, rejected
