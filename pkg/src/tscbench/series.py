"""Shared series transforms: z-normalisation, differencing, periodogram, windows."""

import numpy as np

__all__ = [
    "znorm",
    "znorm_rows",
    "first_difference",
    "periodogram",
    "num_dilated_windows",
    "dilated_windows",
]


def znorm(x):
    """Z-normalise with population (1/n) standard deviation.

    A constant series maps to the zero vector.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.size < 1:
        raise ValueError("empty series")
    std = x.std()
    if std <= 1e-12 * max(1.0, abs(float(x.mean()))) or std == 0.0:
        return np.zeros_like(x)
    return (x - x.mean()) / std


def znorm_rows(X):
    """Row-wise znorm of a 2d array; constant rows map to zero rows."""
    X = np.asarray(X, dtype=np.float64)
    mean = X.mean(axis=-1, keepdims=True)
    std = X.std(axis=-1, keepdims=True)
    safe = np.where(std > 0.0, std, 1.0)
    out = (X - mean) / safe
    out[np.broadcast_to(std == 0.0, out.shape)] = 0.0
    return out


def first_difference(x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] < 2:
        raise ValueError("series length must be at least 2")
    return np.diff(x, axis=-1)


def periodogram(x):
    """Squared magnitudes of DFT coefficients 1..floor(n/2); DC excluded."""
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[-1]
    if n < 2:
        raise ValueError("series length must be at least 2")
    coeffs = np.fft.rfft(x, axis=-1)
    return np.abs(coeffs[..., 1 : n // 2 + 1]) ** 2


def num_dilated_windows(n, l, d):
    return n - (l - 1) * d


def dilated_windows(x, l, d):
    """All dilated windows of length ``l`` and dilation ``d``, one per row.

    Yields exactly n - (l-1)*d windows; window i reads x[i], x[i+d], ...
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[-1]
    if l < 1 or d < 1:
        raise ValueError("l and d must be positive")
    count = num_dilated_windows(n, l, d)
    if count < 1:
        raise ValueError(f"(l-1)*d = {(l - 1) * d} must be < n = {n}")
    idx = np.arange(count)[:, None] + np.arange(l)[None, :] * d
    return x[..., idx]
