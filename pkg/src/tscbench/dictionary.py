"""Symbolic Fourier discretisation and the dilated bag-of-words classifier.

A window is Fourier transformed, the highest-variance coefficient values are
kept, each is binned to a symbol (Multiple Coefficient Binning) and the
symbols are packed into an integer word. Word-count histograms over many
random discretisation configurations feed the ridge head.
"""

from dataclasses import dataclass

import numpy as np

from .ridge import RidgeClassifierCV
from .series import dilated_windows, first_difference, znorm_rows

__all__ = [
    "SfaConfig",
    "SfaModel",
    "dft_coefficients",
    "mcb_fit",
    "mcb_symbolize",
    "sfa_word",
    "bag_of_words",
    "WeaselDClassifier",
]

WORD_LENGTH_CHOICES = (7, 8)
WEASEL_WORD_LENGTH = 8  # dictionary size a^l = 256 per configuration
ALPHABET_SIZE = 2
MIN_WINDOW = 4
MAX_WINDOW = 24


@dataclass(frozen=True)
class SfaConfig:
    """One discretisation configuration."""

    window_length: int
    dilation: int
    word_length: int
    alphabet_size: int
    binning: str  # "equi-depth" or "equi-width"
    normalise: bool

    def __post_init__(self):
        if self.word_length not in WORD_LENGTH_CHOICES:
            raise ValueError("word length must be 7 or 8")
        if self.window_length < self.word_length:
            raise ValueError("window must be at least as long as the word")
        if self.dilation < 1:
            raise ValueError("dilation must be >= 1")
        if self.binning not in ("equi-depth", "equi-width"):
            raise ValueError(f"unknown binning strategy {self.binning!r}")


def dft_coefficients(window, count, exclude_dc=False):
    """Interleaved real/imaginary parts of the lowest-frequency DFT
    coefficients, truncated to ``count`` values.

    Accepts a single window or a stack of windows on the leading axes.
    """
    x = np.atleast_2d(np.asarray(window, dtype=np.float64))
    w = x.shape[-1]
    if count > w:
        raise ValueError(f"count {count} exceeds window length {w}")
    coeffs = np.fft.rfft(x, axis=-1)
    if exclude_dc:
        coeffs = coeffs[..., 1:]
    interleaved = np.empty(coeffs.shape[:-1] + (2 * coeffs.shape[-1],))
    interleaved[..., 0::2] = coeffs.real
    interleaved[..., 1::2] = coeffs.imag
    out = interleaved[..., :count]
    if np.asarray(window).ndim == 1:
        return out[0]
    return out


def mcb_fit(values, alphabet_size, strategy):
    """Bin boundaries for one coefficient column.

    equi-depth places boundaries at empirical quantiles; equi-width splits
    [min, max] evenly. A degenerate column collapses to a single repeated
    boundary at its value.
    """
    values = np.asarray(values, dtype=np.float64)
    a = alphabet_size
    if values.size < a or values.min() == values.max():
        return np.full(a - 1, values.min() if values.size else 0.0)
    if strategy == "equi-depth":
        qs = np.arange(1, a) / a
        return np.quantile(values, qs)
    if strategy == "equi-width":
        lo, hi = values.min(), values.max()
        return lo + (hi - lo) * np.arange(1, a) / a
    raise ValueError(f"unknown binning strategy {strategy!r}")


def mcb_symbolize(values, boundaries):
    """Map values to symbols 0..a-1; a value on a boundary takes the upper bin."""
    return np.searchsorted(boundaries, np.asarray(values), side="right")


@dataclass
class SfaModel:
    """A fitted discretisation: coefficient slots plus per-slot bin boundaries."""

    config: SfaConfig
    coefficient_indices: np.ndarray  # l selected interleaved columns
    boundaries: np.ndarray  # (l, a-1), non-decreasing per row

    def __post_init__(self):
        if len(self.coefficient_indices) != self.config.word_length:
            raise ValueError("need exactly word_length coefficient slots")
        if self.boundaries.shape != (
            self.config.word_length,
            self.config.alphabet_size - 1,
        ):
            raise ValueError("boundary shape mismatch")


def _window_coefficients(windows, config):
    if config.normalise:
        windows = znorm_rows(windows)
    # All w informative interleaved values (fewer once DC is excluded).
    w = windows.shape[-1]
    count = w - 2 if config.normalise else w
    return dft_coefficients(windows, count, exclude_dc=config.normalise)


def fit_sfa(training_windows, config):
    """Fit MCB bins on training windows, choosing the ``l`` interleaved
    Fourier values with the highest variance."""
    coeffs = _window_coefficients(np.asarray(training_windows, float), config)
    variances = coeffs.var(axis=0)
    l = config.word_length
    order = np.argsort(-variances, kind="stable")[:l]
    boundaries = np.stack(
        [mcb_fit(coeffs[:, j], config.alphabet_size, config.binning) for j in order]
    )
    return SfaModel(config, np.asarray(order), boundaries)


def sfa_word(window, model):
    """Discretise one window to an integer word in [0, a^l).

    Symbols are packed base-a, most significant first.
    """
    return int(sfa_words(np.asarray(window)[None, :], model)[0])


def sfa_words(windows, model):
    coeffs = _window_coefficients(np.asarray(windows, float), model.config)
    a = model.config.alphabet_size
    words = np.zeros(len(coeffs), dtype=np.int64)
    for slot, j in enumerate(model.coefficient_indices):
        symbols = mcb_symbolize(coeffs[:, j], model.boundaries[slot])
        words = words * a + symbols
    return words


def bag_of_words(series, model):
    """Word-count histogram over all dilated windows of one series."""
    cfg = model.config
    windows = dilated_windows(series, cfg.window_length, cfg.dilation)
    words = sfa_words(windows, model)
    return np.bincount(words, minlength=cfg.alphabet_size**cfg.word_length)


def bags_of_words(X, model):
    """Row-wise bags for a whole series matrix, computed in one batch."""
    cfg = model.config
    windows = dilated_windows(X, cfg.window_length, cfg.dilation)  # (m, nw, w)
    m, nw, w = windows.shape
    words = sfa_words(windows.reshape(m * nw, w), model).reshape(m, nw)
    size = cfg.alphabet_size**cfg.word_length
    offsets = np.arange(m)[:, None] * size
    flat = np.bincount((words + offsets).ravel(), minlength=m * size)
    return flat.reshape(m, size)


def _sample_config(rng, n):
    l = WEASEL_WORD_LENGTH
    # Need w >= l + 2 so that l interleaved values survive DC exclusion.
    w_lo = max(MIN_WINDOW, l + 2)
    w_hi = min(MAX_WINDOW, n)
    if w_hi < w_lo:
        raise ValueError(f"series length {n} too short for a word of length {l}")
    w = int(rng.integers(w_lo, w_hi + 1))
    d_hi = max(1, int(2 ** (np.log2(n - 1) / (w - 1))))
    d_hi = min(d_hi, (n - 1) // (w - 1))
    d = int(rng.integers(1, max(1, d_hi) + 1))
    binning = "equi-depth" if rng.integers(0, 2) else "equi-width"
    normalise = bool(rng.integers(0, 2))
    return SfaConfig(w, d, l, ALPHABET_SIZE, binning, normalise)


# Config count clamp chosen so the total feature count always lands in the
# 30k-70k band: R*2*256 >= 30000 and R*2*256 <= 70000.
MIN_CONFIGS = 59
MAX_CONFIGS = 136


def num_configs(n_cases):
    return int(np.clip(int(np.ceil(n_cases / 2)), MIN_CONFIGS, MAX_CONFIGS))


class WeaselDClassifier:
    """Dilated bag-of-words pipeline over many random SFA configurations.

    Each configuration contributes a 2^l word histogram for the base series
    and another for its first difference; the concatenated histograms are
    classified by the ridge head.
    """

    def __init__(self, seed=None, n_configs=None):
        self.seed = seed
        self.n_configs = n_configs
        self.models = None  # list of (base SfaModel, diff SfaModel)
        self.head = None

    @property
    def n_features(self):
        return sum(
            2 * m.config.alphabet_size**m.config.word_length for m, _ in self.models
        )

    def _training_windows(self, X, cfg):
        w = dilated_windows(X, cfg.window_length, cfg.dilation)
        return w.reshape(-1, cfg.window_length)

    def _transform(self, X):
        Xd = first_difference(X)
        blocks = []
        for base_model, diff_model in self.models:
            for model, rep in ((base_model, X), (diff_model, Xd)):
                blocks.append(bags_of_words(rep, model).astype(np.float64))
        return np.hstack(blocks)

    def fit(self, dataset):
        rng = np.random.default_rng(self.seed)
        X = dataset.series
        n = dataset.series_length
        R = self.n_configs if self.n_configs is not None else num_configs(X.shape[0])
        self.models = []
        for _ in range(R):
            cfg = _sample_config(rng, n - 1)  # diff rep is the shorter one
            base = fit_sfa(self._training_windows(X, cfg), cfg)
            diff = fit_sfa(self._training_windows(first_difference(X), cfg), cfg)
            self.models.append((base, diff))
        self.head = RidgeClassifierCV().fit(
            self._transform(X), dataset.labels, n_classes=dataset.n_classes
        )
        return self

    def predict(self, dataset):
        return self.head.predict(self._transform(dataset.series))

    def metadata(self):
        return (
            f"configs={len(self.models) if self.models else 'unfit'},"
            f"alphabet=2,word_length={WEASEL_WORD_LENGTH},"
            f"window=[{MIN_WINDOW},{MAX_WINDOW}],"
            "reps=base+diff,coefficients=top_variance,feature_selection=none"
        )
