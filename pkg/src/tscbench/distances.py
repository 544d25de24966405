"""Dynamic time warping and the 1NN-DTW benchmark classifier."""

import numpy as np
from numba import njit

__all__ = ["dtw_distance", "Nn1DtwClassifier"]


@njit(cache=True)
def _dtw(a, b):
    n, m = len(a), len(b)
    big = np.inf
    cost = np.full((n + 1, m + 1), big)
    cost[0, 0] = 0.0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            d = a[i - 1] - b[j - 1]
            d = d * d
            best = cost[i - 1, j - 1]
            if cost[i - 1, j] < best:
                best = cost[i - 1, j]
            if cost[i, j - 1] < best:
                best = cost[i, j - 1]
            cost[i, j] = d + best
    return cost[n, m]


def dtw_distance(a, b):
    """Full-window DTW with squared pointwise cost (no final square root)."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise ValueError("series must be non-empty")
    return float(_dtw(a, b))


@njit(cache=True)
def _nn1_indices(train, queries):
    out = np.empty(queries.shape[0], dtype=np.int64)
    for q in range(queries.shape[0]):
        best = np.inf
        best_i = 0
        for i in range(train.shape[0]):
            d = _dtw(queries[q], train[i])
            if d < best:
                best = d
                best_i = i
        out[q] = best_i
    return out


class Nn1DtwClassifier:
    """1-NN classifier under DTW; ties go to the lowest training index."""

    def __init__(self, seed=None):
        self.train_series = None
        self.train_labels = None
        self.n_classes = None

    def fit(self, dataset):
        if dataset.n_cases < 1:
            raise ValueError("empty training set")
        self.train_series = dataset.series
        self.train_labels = dataset.labels
        self.n_classes = dataset.n_classes
        return self

    def predict(self, dataset):
        idx = _nn1_indices(
            np.ascontiguousarray(self.train_series),
            np.ascontiguousarray(dataset.series),
        )
        labels = self.train_labels[idx]
        probs = np.zeros((len(labels), self.n_classes))
        probs[np.arange(len(labels)), labels] = 1.0
        return labels, probs

    def metadata(self):
        return "distance=dtw-squared,window=full,tie_break=lowest_train_index"
