"""Random convolution transforms: ROCKET, MiniROCKET, MultiROCKET and Hydra.

All transforms end in the shared ridge head (:mod:`tscbench.ridge`). Kernel
application is vectorised over (series, kernel) per dilation group; kernels
and biases are generated up front so results are deterministic given a seed.
"""

from dataclasses import dataclass

import numpy as np

from .ridge import RidgeClassifierCV
from .series import first_difference

__all__ = [
    "Kernel",
    "HydraConfig",
    "apply_kernel",
    "pool",
    "random_dilation",
    "generate_rocket_kernels",
    "rocket_transform",
    "MiniRocketTransform",
    "MultiRocketTransform",
    "HydraTransform",
    "RocketClassifier",
    "MiniRocketClassifier",
    "MultiRocketClassifier",
    "HydraClassifier",
    "HydraMRClassifier",
]

ROCKET_KERNEL_LENGTHS = (7, 9, 11)
FIXED_KERNEL_LENGTH = 9

MINIROCKET_SLOTS_PER_KERNEL = 119
MULTIROCKET_SLOTS_PER_KERNEL = 74


@dataclass(frozen=True)
class Kernel:
    """One random convolution: weights, bias, dilation and padding flag."""

    weights: np.ndarray
    bias: float
    dilation: int
    padding: bool

    def __post_init__(self):
        w = np.ascontiguousarray(self.weights, dtype=np.float64)
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        if self.dilation < 1:
            raise ValueError("dilation must be >= 1")

    @property
    def length(self):
        return len(self.weights)


@dataclass(frozen=True)
class HydraConfig:
    groups: int = 64
    kernels_per_group: int = 8

    def __post_init__(self):
        if self.groups < 1 or self.kernels_per_group < 2:
            raise ValueError("need groups >= 1 and kernels_per_group >= 2")


def _window_index(count, l, d):
    return np.arange(count)[:, None] + np.arange(l)[None, :] * d


def apply_kernel(series, kernel):
    """Activation map of one kernel over one series.

    Without padding the map has n - (l-1)*d entries; with padding the series
    is extended by floor(l/2)*d zeros on each side so the map has length n.
    """
    x = np.asarray(series, dtype=np.float64)
    n = x.shape[-1]
    l, d = kernel.length, kernel.dilation
    if kernel.padding:
        pad = (l // 2) * d
        x = np.pad(x, (pad, pad))
        n = x.shape[-1]
    count = n - (l - 1) * d
    if count < 1:
        raise ValueError("kernel receptive field exceeds (padded) series length")
    return x[_window_index(count, l, d)] @ kernel.weights + kernel.bias


def _longest_positive_run(mask):
    """Longest run of True along the last axis."""
    run = np.zeros(mask.shape[:-1], dtype=np.float64)
    best = np.zeros_like(run)
    for t in range(mask.shape[-1]):
        run = (run + 1.0) * mask[..., t]
        best = np.maximum(best, run)
    return best


def pool(activation_map, operator):
    """Pool one activation map to a scalar; 'positive' means strictly > 0.

    Operators: max, ppv (proportion positive), mpv (mean of positives, 0 if
    none), mipv (mean 0-based index of positives, -1 if none), lspv (longest
    run of consecutive positives).
    """
    a = np.asarray(activation_map, dtype=np.float64)
    if a.size == 0:
        raise ValueError("empty activation map")
    op = operator.lower()
    if op == "max":
        return float(a.max())
    pos = a > 0
    if op == "ppv":
        return float(pos.mean())
    if op == "mpv":
        return float(a[pos].mean()) if pos.any() else 0.0
    if op == "mipv":
        return float(np.flatnonzero(pos).mean()) if pos.any() else -1.0
    if op == "lspv":
        return float(_longest_positive_run(pos[None, :])[0])
    raise ValueError(f"unknown pooling operator {operator!r}")


def random_dilation(rng, n, l):
    """d = floor(2^u) with u ~ U(0, log2((n-1)/(l-1)))."""
    high = np.log2((n - 1) / (l - 1))
    if high <= 0:
        return 1
    return int(2 ** rng.uniform(0.0, high))


def generate_rocket_kernels(rng, n, num_kernels):
    """Random ROCKET kernels: l in {7,9,11}, mean-centred N(0,1) weights,
    U(-1,1) bias, random padding and exponentially drawn dilation."""
    kernels = []
    for _ in range(num_kernels):
        l = int(rng.choice(ROCKET_KERNEL_LENGTHS))
        w = rng.normal(0.0, 1.0, size=l)
        w -= w.mean()
        b = float(rng.uniform(-1.0, 1.0))
        d = random_dilation(rng, n, l)
        p = bool(rng.integers(0, 2))
        kernels.append(Kernel(weights=w, bias=b, dilation=d, padding=p))
    return kernels


def _conv_batch(X, W, d, padding):
    """Maps of all kernels in W (k, l) over all rows of X (m, n) -> (m, L, k)."""
    l = W.shape[1]
    if padding:
        pad = (l // 2) * d
        X = np.pad(X, ((0, 0), (pad, pad)))
    count = X.shape[1] - (l - 1) * d
    if count < 1:
        raise ValueError("kernel receptive field exceeds (padded) series length")
    return X[:, _window_index(count, l, d)] @ W.T


def rocket_transform(X, kernels):
    """Feature matrix m x 2k: per kernel, MAX and PPV of its activation map.

    Kernels sharing (length, dilation, padding) are applied as one batch.
    """
    X = np.asarray(X, dtype=np.float64)
    m = X.shape[0]
    features = np.empty((m, 2 * len(kernels)))
    groups = {}
    for i, k in enumerate(kernels):
        groups.setdefault((k.length, k.dilation, k.padding), []).append(i)
    for (l, d, p), members in groups.items():
        W = np.stack([kernels[i].weights for i in members])
        b = np.array([kernels[i].bias for i in members])
        maps = _conv_batch(X, W, d, p) + b  # (m, L, |members|)
        mx = maps.max(axis=1)
        ppv = (maps > 0).mean(axis=1)
        for j, i in enumerate(members):
            features[:, 2 * i] = mx[:, j]
            features[:, 2 * i + 1] = ppv[:, j]
    return features


def _mini_kernel_weights():
    """The 84 fixed length-9 kernels: three weights of 2, six of -1."""
    from itertools import combinations

    W = np.full((84, 9), -1.0)
    for i, pos in enumerate(combinations(range(9), 3)):
        W[i, list(pos)] = 2.0
    return W


def _slot_dilations(n, num_slots, l=FIXED_KERNEL_LENGTH):
    """Slot dilations spread log-uniformly up to the receptive-field bound."""
    max_exp = max(0.0, np.log2((n - 1) / (l - 1)))
    if num_slots == 1:
        return np.array([1], dtype=np.int64)
    exps = max_exp * np.arange(num_slots) / (num_slots - 1)
    return np.floor(2.0**exps).astype(np.int64)


class MiniRocketTransform:
    """Fixed {-1, 2} kernel set, PPV pooling, biases from activation quantiles.

    84 kernels x 119 (dilation, bias) slots give 9996 features.
    """

    def __init__(self, num_slots=MINIROCKET_SLOTS_PER_KERNEL):
        self.num_slots = num_slots
        self.weights = _mini_kernel_weights()
        self.dilations = None
        self.paddings = None
        self.biases = None  # (84, num_slots)

    @property
    def n_features(self):
        return self.weights.shape[0] * self.num_slots

    def fit(self, X, rng):
        X = np.asarray(X, dtype=np.float64)
        m, n = X.shape
        if n < FIXED_KERNEL_LENGTH:
            raise ValueError("series shorter than the fixed kernel length 9")
        self.dilations = _slot_dilations(n, self.num_slots)
        self.paddings = (np.arange(self.num_slots) % 2) == 0
        sample_idx = rng.integers(0, m, size=(84, self.num_slots))
        quantiles = rng.uniform(0.0, 1.0, size=(84, self.num_slots))
        self.biases = np.empty((84, self.num_slots))
        for maps, slots in self._iter_dilation_maps(X):
            for s in slots:
                slot_maps = self._slot_view(maps, n, s)
                for k in range(84):
                    self.biases[k, s] = np.quantile(
                        slot_maps[sample_idx[k, s], :, k], quantiles[k, s]
                    )
        return self

    def _iter_dilation_maps(self, X):
        """Padded activation maps (m, n, 84) per distinct dilation."""
        by_d = {}
        for s, d in enumerate(self.dilations):
            by_d.setdefault(int(d), []).append(s)
        for d, slots in by_d.items():
            yield _conv_batch(X, self.weights, d, padding=True), slots

    def _slot_view(self, padded_maps, n, s):
        if self.paddings[s]:
            return padded_maps
        d = int(self.dilations[s])
        lo = (FIXED_KERNEL_LENGTH // 2) * d
        return padded_maps[:, lo : lo + n - (FIXED_KERNEL_LENGTH - 1) * d, :]

    def transform(self, X):
        X = np.asarray(X, dtype=np.float64)
        m, n = X.shape
        features = np.empty((m, self.n_features))
        for maps, slots in self._iter_dilation_maps(X):
            for s in slots:
                slot_maps = self._slot_view(maps, n, s)
                ppv = (slot_maps > self.biases[None, None, :, s]).mean(axis=1)
                features[:, s :: self.num_slots] = ppv
        return features

    def fit_transform(self, X, rng):
        return self.fit(X, rng).transform(X)


MULTIROCKET_POOLS = ("ppv", "mpv", "mipv", "lspv")


class MultiRocketTransform:
    """MiniROCKET kernels on base series and first differences with four
    pooling operations (PPV, MPV, MIPV, LSPV) applied above the bias.

    84 kernels x 74 slots x 4 pools x 2 representations = 49728 features,
    within 10% of the nominal 50k.
    """

    def __init__(self, num_slots=MULTIROCKET_SLOTS_PER_KERNEL):
        self.num_slots = num_slots
        self.base = MiniRocketTransform(num_slots)
        self.diff = MiniRocketTransform(num_slots)

    @property
    def n_features(self):
        return 2 * 84 * self.num_slots * len(MULTIROCKET_POOLS)

    def fit(self, X, rng):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[1] < FIXED_KERNEL_LENGTH + 1:
            raise ValueError("series too short for differenced representation")
        self.base.fit(X, rng)
        self.diff.fit(first_difference(X), rng)
        return self

    def _pooled(self, engine, X):
        m, n = X.shape
        block = np.empty((m, 84 * engine.num_slots * len(MULTIROCKET_POOLS)))
        per_kernel = engine.num_slots * len(MULTIROCKET_POOLS)
        for maps, slots in engine._iter_dilation_maps(X):
            for s in slots:
                above = engine._slot_view(maps, n, s) - engine.biases[None, None, :, s]
                pos = above > 0
                cnt = pos.sum(axis=1)
                safe = np.maximum(cnt, 1)
                ppv = pos.mean(axis=1)
                mpv = np.where(cnt > 0, (above * pos).sum(axis=1) / safe, 0.0)
                idx = np.arange(above.shape[1])[None, :, None]
                mipv = np.where(cnt > 0, (idx * pos).sum(axis=1) / safe, -1.0)
                lspv = _longest_positive_run(np.moveaxis(pos, 1, 2))
                for o, vals in enumerate((ppv, mpv, mipv, lspv)):
                    col = s * len(MULTIROCKET_POOLS) + o
                    block[:, col::per_kernel] = vals
        return block

    def transform(self, X):
        X = np.asarray(X, dtype=np.float64)
        return np.hstack(
            [self._pooled(self.base, X), self._pooled(self.diff, first_difference(X))]
        )

    def fit_transform(self, X, rng):
        return self.fit(X, rng).transform(X)


class HydraTransform:
    """Competing-kernel counting transform.

    Kernels are arranged in g groups of k; at every timepoint the kernel with
    the highest activation in its group (ties to the lowest kernel index) has
    its count incremented. Applied to the base series and first differences
    for every power-of-two dilation up to the receptive-field bound; counts
    are square-root compressed.
    """

    def __init__(self, config=None):
        self.config = config or HydraConfig()
        self.weights = None  # per representation: (g*k, 9)
        self.dilations = None

    def fit(self, X, rng):
        X = np.asarray(X, dtype=np.float64)
        n = X.shape[1]
        if n < FIXED_KERNEL_LENGTH + 1:
            raise ValueError("series too short for differenced representation")
        g, k = self.config.groups, self.config.kernels_per_group
        self.weights = [rng.normal(0.0, 1.0, size=(g * k, 9)) for _ in range(2)]
        self.dilations = [
            self._power_dilations(n),
            self._power_dilations(n - 1),
        ]
        return self

    @staticmethod
    def _power_dilations(n, l=FIXED_KERNEL_LENGTH):
        max_exp = int(np.floor(np.log2((n - 1) / (l - 1)))) if n > l else 0
        return [2**e for e in range(max(0, max_exp) + 1)]

    @property
    def n_features(self):
        g, k = self.config.groups, self.config.kernels_per_group
        return g * k * sum(len(ds) for ds in self.dilations)

    def transform(self, X):
        X = np.asarray(X, dtype=np.float64)
        g, k = self.config.groups, self.config.kernels_per_group
        blocks = []
        for rep, (W, dils) in enumerate(zip(self.weights, self.dilations)):
            Xr = X if rep == 0 else first_difference(X)
            for d in dils:
                maps = _conv_batch(Xr, W, d, padding=True)  # (m, L, g*k)
                m, L = maps.shape[0], maps.shape[1]
                grouped = maps.reshape(m, L, g, k)
                winner = grouped.argmax(axis=3)  # (m, L, g)
                counts = (winner[..., None] == np.arange(k)).sum(axis=1)
                blocks.append(np.sqrt(counts.reshape(m, g * k).astype(np.float64)))
        return np.hstack(blocks)

    def fit_transform(self, X, rng):
        return self.fit(X, rng).transform(X)


class _TransformRidgeClassifier:
    """Common pipeline: fitted transform feeding the ridge head."""

    def __init__(self, seed=None):
        self.seed = seed
        self.head = None

    def _make_transform_features(self, X, rng):
        raise NotImplementedError

    def _features(self, X):
        raise NotImplementedError

    def fit(self, dataset):
        rng = np.random.default_rng(self.seed)
        features = self._make_transform_features(dataset.series, rng)
        self.head = RidgeClassifierCV().fit(
            features, dataset.labels, n_classes=dataset.n_classes
        )
        return self

    def predict(self, dataset):
        return self.head.predict(self._features(dataset.series))


class RocketClassifier(_TransformRidgeClassifier):
    def __init__(self, num_kernels=10_000, seed=None):
        super().__init__(seed)
        if num_kernels < 1:
            raise ValueError("num_kernels must be >= 1")
        self.num_kernels = num_kernels
        self.kernels = None

    def _make_transform_features(self, X, rng):
        self.kernels = generate_rocket_kernels(rng, X.shape[1], self.num_kernels)
        return rocket_transform(X, self.kernels)

    def _features(self, X):
        return rocket_transform(X, self.kernels)

    def metadata(self):
        return (
            f"num_kernels={self.num_kernels},pooling=max+ppv,"
            "dilation=pow2_uniform_exponent,weights=normal_mean_centred"
        )


class MiniRocketClassifier(_TransformRidgeClassifier):
    def __init__(self, seed=None):
        super().__init__(seed)
        self.transformer = MiniRocketTransform()

    def _make_transform_features(self, X, rng):
        return self.transformer.fit_transform(X, rng)

    def _features(self, X):
        return self.transformer.transform(X)

    def metadata(self):
        return "kernels=84x{-1,2},slots=119,pooling=ppv,bias=activation_quantiles"


class MultiRocketClassifier(_TransformRidgeClassifier):
    def __init__(self, seed=None):
        super().__init__(seed)
        self.transformer = MultiRocketTransform()

    def _make_transform_features(self, X, rng):
        return self.transformer.fit_transform(X, rng)

    def _features(self, X):
        return self.transformer.transform(X)

    def metadata(self):
        return (
            "kernels=84x{-1,2},slots=74,pooling=ppv+mpv+mipv+lspv,"
            "representations=base+diff,mpv_empty=0,mipv_empty=-1"
        )


class HydraClassifier(_TransformRidgeClassifier):
    def __init__(self, config=None, seed=None):
        super().__init__(seed)
        self.transformer = HydraTransform(config)

    def _make_transform_features(self, X, rng):
        return self.transformer.fit_transform(X, rng)

    def _features(self, X):
        return self.transformer.transform(X)

    def metadata(self):
        c = self.transformer.config
        return (
            f"groups={c.groups},kernels_per_group={c.kernels_per_group},"
            "dilations=pow2,counts=sqrt_compressed,argmax_tie=lowest_index"
        )


class HydraMRClassifier(_TransformRidgeClassifier):
    """Hydra counts concatenated with MultiROCKET features into one ridge fit."""

    def __init__(self, config=None, seed=None):
        super().__init__(seed)
        self.hydra = HydraTransform(config)
        self.multi = MultiRocketTransform()

    def _make_transform_features(self, X, rng):
        h = self.hydra.fit_transform(X, rng)
        m = self.multi.fit_transform(X, rng)
        return np.hstack([h, m])

    def _features(self, X):
        return np.hstack([self.hydra.transform(X), self.multi.transform(X)])

    def metadata(self):
        c = self.hydra.config
        return (
            f"blocks=hydra+multirocket,groups={c.groups},"
            f"kernels_per_group={c.kernels_per_group},multirocket_slots=74"
        )
