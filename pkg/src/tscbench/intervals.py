"""Interval ensembles: random phase-dependent intervals, summary statistics
and an information-gain decision tree with margin tie-breaking."""

from dataclasses import dataclass

import numpy as np

from .series import first_difference, periodogram

__all__ = [
    "STAT_CATALOGUE",
    "IntervalSpec",
    "interval_features",
    "InfoGainTree",
    "TsfClassifier",
    "DrcifClassifier",
    "drcif_num_intervals",
]

REPRESENTATIONS = ("base", "periodogram", "difference")


def _slope(X):
    n = X.shape[-1]
    t = np.arange(n) - (n - 1) / 2.0
    denom = (t**2).sum()
    if denom == 0:
        return np.zeros(X.shape[:-1])
    return (X * t).sum(axis=-1) / denom


STAT_CATALOGUE = {
    "mean": lambda X: X.mean(axis=-1),
    "variance": lambda X: X.var(axis=-1, ddof=1),
    "slope": _slope,
    "median": lambda X: np.median(X, axis=-1),
    "iqr": lambda X: np.percentile(X, 75, axis=-1) - np.percentile(X, 25, axis=-1),
    "min": lambda X: X.min(axis=-1),
    "max": lambda X: X.max(axis=-1),
}

STAT_NAMES = tuple(STAT_CATALOGUE)


@dataclass(frozen=True)
class IntervalSpec:
    representation: str
    offset: int
    length: int

    def __post_init__(self):
        if self.representation not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {self.representation!r}")
        if self.offset < 0 or self.length < 1:
            raise ValueError("invalid interval geometry")


def interval_features(X, interval, stats):
    """Requested summary statistics over one interval of each row of ``X``.

    ``X`` must already be in the interval's representation. Variance and
    slope require interval length >= 2.
    """
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if interval.offset + interval.length > X.shape[1]:
        raise ValueError("interval exceeds representation length")
    if interval.length < 2 and any(s in ("variance", "slope") for s in stats):
        raise ValueError("variance and slope need interval length >= 2")
    seg = X[:, interval.offset : interval.offset + interval.length]
    return np.column_stack([STAT_CATALOGUE[s](seg) for s in stats])


def _entropy(counts):
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


class _Node:
    __slots__ = ("feature", "threshold", "left", "right", "label")

    def __init__(self, label=None):
        self.feature = None
        self.threshold = None
        self.left = None
        self.right = None
        self.label = label


class InfoGainTree:
    """Decision tree splitting on information gain over all attributes.

    Exact information-gain ties are broken by margin: the distance from the
    split threshold (a midpoint) to the nearest training value. Growth stops
    at pure nodes or nodes with at most 2 cases.
    """

    def __init__(self, n_classes):
        self.n_classes = n_classes
        self.root = None

    def fit(self, F, y):
        F = np.asarray(F, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        self.root = self._build(F, y)
        return self

    def _majority(self, y):
        return int(np.bincount(y, minlength=self.n_classes).argmax())

    def _build(self, F, y):
        if len(y) <= 2 or (y == y[0]).all():
            return _Node(label=self._majority(y))
        split = self._best_split(F, y)
        if split is None:
            return _Node(label=self._majority(y))
        j, thr = split
        node = _Node()
        node.feature = j
        node.threshold = thr
        mask = F[:, j] <= thr
        node.left = self._build(F[mask], y[mask])
        node.right = self._build(F[~mask], y[~mask])
        return node

    def _best_split(self, F, y):
        m, f = F.shape
        parent = _entropy(np.bincount(y, minlength=self.n_classes))
        onehot = np.eye(self.n_classes)[y]
        best = None  # (gain, margin, feature, threshold)
        for j in range(f):
            order = np.argsort(F[:, j], kind="stable")
            v = F[order, j]
            cum = np.cumsum(onehot[order], axis=0)
            cut = np.flatnonzero(v[:-1] < v[1:])  # split after position i
            if len(cut) == 0:
                continue
            left = cum[cut]
            right = cum[-1] - left
            n_left = cut + 1.0
            n_right = m - n_left
            pl = left / n_left[:, None]
            pr = right / n_right[:, None]
            hl = -(pl * np.log2(np.where(pl > 0, pl, 1.0))).sum(axis=1)
            hr = -(pr * np.log2(np.where(pr > 0, pr, 1.0))).sum(axis=1)
            gains = parent - (n_left * hl + n_right * hr) / m
            margins = (v[cut + 1] - v[cut]) / 2.0
            # Best candidate of this feature: max gain, then max margin,
            # then the first (lowest threshold).
            eligible = gains >= gains.max() - 1e-12
            pick = np.flatnonzero(eligible)[margins[eligible].argmax()]
            g, mg = gains[pick], margins[pick]
            if best is not None:
                if g < best[0] - 1e-12:
                    continue
                if abs(g - best[0]) <= 1e-12 and mg <= best[1]:
                    continue
            c = cut[pick]
            best = (g, mg, j, (v[c] + v[c + 1]) / 2.0)
        if best is None or best[0] <= 0:
            return None
        return best[2], best[3]

    def predict(self, F):
        F = np.asarray(F, dtype=np.float64)
        out = np.empty(len(F), dtype=np.int64)
        for i, row in enumerate(F):
            node = self.root
            while node.label is None:
                node = node.left if row[node.feature] <= node.threshold else node.right
            out[i] = node.label
        return out


def _random_interval(rng, r, min_len, max_len):
    length = int(rng.integers(min_len, max_len + 1))
    offset = int(rng.integers(0, r - length + 1))
    return offset, length


class _IntervalForest:
    """Shared fit/predict machinery for TSF and the DrCIF-style ensemble."""

    def __init__(self, num_trees=200, seed=None):
        if num_trees < 1:
            raise ValueError("num_trees must be >= 1")
        self.num_trees = num_trees
        self.seed = seed
        self.trees = None
        self.schemas = None  # per tree: list of (rep, IntervalSpec, stats)
        self.n_classes = None

    def _representations(self, X):
        raise NotImplementedError

    def _tree_schema(self, rng, rep_lengths):
        raise NotImplementedError

    def _tree_features(self, reps, schema):
        cols = [
            interval_features(reps[rep], interval, stats)
            for rep, interval, stats in schema
        ]
        return np.hstack(cols)

    def fit(self, dataset):
        X = dataset.series
        self.n_classes = dataset.n_classes
        reps = self._representations(X)
        rep_lengths = {name: arr.shape[1] for name, arr in reps.items()}
        seeds = np.random.SeedSequence(self.seed).spawn(self.num_trees)
        self.trees = []
        self.schemas = []
        for t in range(self.num_trees):
            rng = np.random.default_rng(seeds[t])
            schema = self._tree_schema(rng, rep_lengths)
            F = self._tree_features(reps, schema)
            tree = InfoGainTree(self.n_classes).fit(F, dataset.labels)
            self.trees.append(tree)
            self.schemas.append(schema)
        return self

    def predict(self, dataset):
        reps = self._representations(dataset.series)
        votes = np.zeros((dataset.n_cases, self.n_classes))
        for tree, schema in zip(self.trees, self.schemas):
            pred = tree.predict(self._tree_features(reps, schema))
            votes[np.arange(len(pred)), pred] += 1.0
        probs = votes / self.num_trees
        return probs.argmax(axis=1), probs


class TsfClassifier(_IntervalForest):
    """Time-series forest: ceil(sqrt(n)) random intervals per tree with
    mean, variance and slope features."""

    STATS = ("mean", "variance", "slope")
    MIN_INTERVAL = 3

    def _representations(self, X):
        if X.shape[1] < self.MIN_INTERVAL:
            raise ValueError("series length must be >= 3")
        return {"base": np.asarray(X, dtype=np.float64)}

    def _tree_schema(self, rng, rep_lengths):
        n = rep_lengths["base"]
        k = int(np.ceil(np.sqrt(n)))
        schema = []
        for _ in range(k):
            offset, length = _random_interval(rng, n, self.MIN_INTERVAL, n)
            schema.append(("base", IntervalSpec("base", offset, length), self.STATS))
        return schema

    def metadata(self):
        return (
            f"num_trees={self.num_trees},intervals_per_tree=ceil(sqrt(n)),"
            "stats=mean+variance+slope,min_interval=3,tie_break=margin"
        )


def drcif_num_intervals(r):
    """Intervals per representation: ceil((4 + sqrt(r)) / 3) for length r."""
    return int(np.ceil((4.0 + np.sqrt(r)) / 3.0))


class DrcifClassifier(_IntervalForest):
    """Interval ensemble over base, periodogram and difference representations
    with a random per-tree subset of the summary-statistic catalogue."""

    ATTRS_PER_TREE = 4

    def _representations(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[1] < 4:
            raise ValueError("series length must be >= 4")
        return {
            "base": X,
            "periodogram": periodogram(X),
            "difference": first_difference(X),
        }

    def _tree_schema(self, rng, rep_lengths):
        stats = tuple(
            STAT_NAMES[i]
            for i in sorted(
                rng.choice(len(STAT_NAMES), size=self.ATTRS_PER_TREE, replace=False)
            )
        )
        schema = []
        for rep in REPRESENTATIONS:
            r = rep_lengths[rep]
            min_len = 3 if r >= 3 else 2
            max_len = max(min_len, r // 2)
            for _ in range(drcif_num_intervals(r)):
                offset, length = _random_interval(rng, r, min_len, max_len)
                schema.append((rep, IntervalSpec(rep, offset, length), stats))
        return schema

    def metadata(self):
        return (
            f"num_trees={self.num_trees},intervals=ceil((4+sqrt(r))/3),"
            f"reps=base+periodogram+difference,attrs_per_tree={self.ATTRS_PER_TREE},"
            "catalogue=mean+variance+slope+median+iqr+min+max"
        )
