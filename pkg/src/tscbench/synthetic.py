"""Synthetic dataset generators for demos and desk-scale benchmarks.

Each generator plants a different kind of class signal (interval statistics,
dominant frequency, or a localised motif) under noise, random phase and
per-series level shifts, and returns standard train/test Dataset pairs.
"""

import os

import numpy as np

from .data import Dataset, write_ts

__all__ = [
    "make_interval_dataset",
    "make_frequency_dataset",
    "make_motif_dataset",
    "write_dataset_pair",
    "make_benchmark_suite",
]


def _finish(name, X, y, rng, level_shift=2.0):
    # Random per-series offsets break naive raw-amplitude matching.
    X = X + rng.uniform(-level_shift, level_shift, size=(X.shape[0], 1))
    return Dataset(name, X, y, ("0", "1"))


def _split(name, maker, m_train, m_test, n, seed):
    rng = np.random.default_rng(seed)
    train = maker(name, m_train, n, rng)
    test = maker(name, m_test, n, rng)
    return train, test


def make_interval_dataset(m_train=60, m_test=60, n=60, seed=0):
    """Two classes differing only in the variance inside one fixed window."""

    def maker(name, m, n, rng):
        y = np.arange(m) % 2
        X = rng.normal(0.0, 1.0, size=(m, n))
        lo, hi = n // 3, n // 3 + n // 4
        t = np.arange(hi - lo)
        phase = rng.uniform(0.0, 2 * np.pi, size=m)
        burst = 3.0 * np.sin(2 * np.pi * 0.35 * t[None, :] + phase[:, None])
        X[:, lo:hi] += burst * y[:, None]
        return _finish(name, X, y, rng, level_shift=3.0)

    return _split("SyntheticInterval", maker, m_train, m_test, n, seed)


def make_frequency_dataset(m_train=60, m_test=60, n=64, seed=1):
    """Classes carry different dominant frequencies at random phase."""

    def maker(name, m, n, rng):
        y = np.arange(m) % 2
        t = np.arange(n)
        freq = np.where(y == 0, 3.0, 6.0)
        phase = rng.uniform(0.0, 2 * np.pi, size=m)
        amp = rng.uniform(0.8, 1.2, size=m)
        X = amp[:, None] * np.sin(
            2 * np.pi * freq[:, None] * t[None, :] / n + phase[:, None]
        )
        X += rng.normal(0.0, 0.4, size=(m, n))
        return _finish(name, X, y, rng)

    return _split("SyntheticFrequency", maker, m_train, m_test, n, seed)


def make_motif_dataset(m_train=60, m_test=60, n=80, seed=2):
    """Class 1 carries a short sharp motif at a random location."""

    def maker(name, m, n, rng):
        y = np.arange(m) % 2
        X = rng.normal(0.0, 0.8, size=(m, n))
        motif_len = 16
        t = np.linspace(0.0, 4 * np.pi, motif_len)
        motif = 4.0 * np.sin(t) * np.hanning(motif_len)
        for i in range(m):
            if y[i] == 1:
                start = rng.integers(0, n - motif_len + 1)
                X[i, start : start + motif_len] += motif
        return _finish(name, X, y, rng, level_shift=3.0)

    return _split("SyntheticMotif", maker, m_train, m_test, n, seed)


def write_dataset_pair(train, test, data_dir):
    """Write ``<dir>/<name>/<name>_TRAIN.ts`` and ``_TEST.ts``."""
    name = train.name
    directory = os.path.join(data_dir, name)
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, f"{name}_TRAIN.ts"), "w", encoding="utf-8") as f:
        f.write(write_ts(train))
    with open(os.path.join(directory, f"{name}_TEST.ts"), "w", encoding="utf-8") as f:
        f.write(write_ts(test))
    return name


def make_benchmark_suite(data_dir, seed=None):
    """Materialise the three generators as archive-style dataset folders.

    With ``seed=None`` each generator keeps its own default seed.
    """
    names = []
    for make in (make_interval_dataset, make_frequency_dataset, make_motif_dataset):
        train, test = make() if seed is None else make(seed=seed)
        names.append(write_dataset_pair(train, test, data_dir))
    return names
