"""Random dilated shapelets: sDist machinery and the 3-features-per-shapelet
ridge pipeline."""

from dataclasses import dataclass

import numpy as np

from .convolution import random_dilation
from .ridge import RidgeClassifierCV
from .series import dilated_windows, znorm, znorm_rows

__all__ = ["Shapelet", "sdist", "sample_shapelets", "RdstClassifier"]

SHAPELET_LENGTH = 11


@dataclass(frozen=True)
class Shapelet:
    """An extracted subseries with dilation, normalisation flag and the
    occurrence threshold used for the count feature."""

    values: np.ndarray
    dilation: int
    normalise: bool
    threshold: float
    source: tuple  # (series index, offset)

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if len(v) < 2:
            raise ValueError("shapelet needs at least 2 values")
        if self.dilation < 1:
            raise ValueError("dilation must be >= 1")
        if self.threshold < 0:
            raise ValueError("threshold must be non-negative")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def length(self):
        return len(self.values)


def _window_distances(shapelet, series, window_cache=None):
    if window_cache is None:
        windows = dilated_windows(series, shapelet.length, shapelet.dilation)
        if shapelet.normalise:
            windows = znorm_rows(windows)
    else:
        windows = window_cache(shapelet.length, shapelet.dilation, shapelet.normalise)
    values = znorm(shapelet.values) if shapelet.normalise else shapelet.values
    diff = windows - values
    return np.einsum("ij,ij->i", diff, diff)


def sdist(shapelet, series):
    """Scan all dilated windows; return (min distance, first argmin offset,
    number of windows with distance strictly below the threshold).

    Distances are squared Euclidean between the (optionally z-normalised)
    shapelet and window.
    """
    d = _window_distances(shapelet, series)
    argmin = int(d.argmin())
    return float(d[argmin]), argmin, int((d < shapelet.threshold).sum())


def sample_shapelets(dataset, k, rng, length=SHAPELET_LENGTH):
    """Cut ``k`` shapelets from random training series at random offsets with
    random dilation and normalisation flag.

    The occurrence threshold of each shapelet is drawn uniformly between the
    5th and 10th percentile of its window distances on one random other
    training series.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    X = dataset.series
    m, n = X.shape
    if n < length + 1:
        raise ValueError(f"series length {n} too short for shapelets of {length}")
    cache = {}

    def cached_windows(probe):
        def lookup(l, d, normalise):
            key = (probe, d, normalise)
            if key not in cache:
                w = dilated_windows(X[probe], l, d)
                cache[key] = znorm_rows(w) if normalise else w
            return cache[key]

        return lookup

    shapelets = []
    for _ in range(k):
        d = random_dilation(rng, n, length)
        span = (length - 1) * d
        src = int(rng.integers(0, m))
        offset = int(rng.integers(0, n - span))
        values = X[src, offset : offset + span + 1 : d].copy()
        normalise = rng.uniform() < 0.8
        probe = src
        if m > 1:
            while probe == src:
                probe = int(rng.integers(0, m))
        partial = Shapelet(values, d, normalise, 0.0, (src, offset))
        dists = _window_distances(partial, X[probe], cached_windows(probe))
        lo, hi = np.percentile(dists, [5.0, 10.0])
        threshold = float(rng.uniform(lo, hi)) if hi > lo else float(hi)
        shapelets.append(Shapelet(values, d, normalise, threshold, (src, offset)))
    return shapelets


def shapelet_transform(X, shapelets):
    """Feature matrix m x 3k: (min distance, argmin, occurrence count) per
    shapelet, batched by (dilation, normalisation) group."""
    X = np.asarray(X, dtype=np.float64)
    m = X.shape[0]
    features = np.empty((m, 3 * len(shapelets)))
    groups = {}
    for idx, s in enumerate(shapelets):
        groups.setdefault((s.dilation, s.normalise, s.length), []).append(idx)
    for (d, normalise, l), members in groups.items():
        S = np.stack(
            [
                znorm(shapelets[i].values) if normalise else shapelets[i].values
                for i in members
            ]
        )
        thresholds = np.array([shapelets[i].threshold for i in members])
        s_sq = np.einsum("ij,ij->i", S, S)
        cols = 3 * np.asarray(members)
        for row in range(m):
            W = dilated_windows(X[row], l, d)
            if normalise:
                W = znorm_rows(W)
            w_sq = np.einsum("ij,ij->i", W, W)
            dists = w_sq[:, None] - 2.0 * (W @ S.T) + s_sq[None, :]
            np.maximum(dists, 0.0, out=dists)
            arg = dists.argmin(axis=0)
            features[row, cols] = dists[arg, np.arange(len(members))]
            features[row, cols + 1] = arg
            features[row, cols + 2] = (dists < thresholds[None, :]).sum(axis=0)
    return features


class RdstClassifier:
    """Random dilated shapelet transform ending in the ridge head."""

    def __init__(self, num_shapelets=10_000, seed=None):
        self.num_shapelets = num_shapelets
        self.seed = seed
        self.shapelets = None
        self.head = None

    def fit(self, dataset):
        rng = np.random.default_rng(self.seed)
        self.shapelets = sample_shapelets(dataset, self.num_shapelets, rng)
        features = shapelet_transform(dataset.series, self.shapelets)
        self.head = RidgeClassifierCV().fit(
            features, dataset.labels, n_classes=dataset.n_classes
        )
        return self

    def predict(self, dataset):
        return self.head.predict(shapelet_transform(dataset.series, self.shapelets))

    def metadata(self):
        return (
            f"num_shapelets={self.num_shapelets},length={SHAPELET_LENGTH},"
            "normalise_prob=0.8,threshold=u(p5,p10)_other_series,distance=squared"
        )
