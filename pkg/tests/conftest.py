import numpy as np
import pytest

from tscbench.data import Dataset


@pytest.fixture
def small_dataset():
    """A tiny two-class dataset with a clear frequency signal."""
    rng = np.random.default_rng(12345)
    m, n = 24, 40
    labels = np.arange(m) % 2
    t = np.arange(n)
    freq = np.where(labels == 0, 2.0, 5.0)
    phase = rng.uniform(0.0, 2 * np.pi, size=m)
    X = np.sin(2 * np.pi * freq[:, None] * t[None, :] / n + phase[:, None])
    X += rng.normal(0.0, 0.2, size=(m, n))
    return Dataset("Small", X, labels, ("a", "b"))


@pytest.fixture
def small_pair(small_dataset):
    rng = np.random.default_rng(54321)
    m, n = 20, 40
    labels = np.arange(m) % 2
    t = np.arange(n)
    freq = np.where(labels == 0, 2.0, 5.0)
    phase = rng.uniform(0.0, 2 * np.pi, size=m)
    X = np.sin(2 * np.pi * freq[:, None] * t[None, :] / n + phase[:, None])
    X += rng.normal(0.0, 0.2, size=(m, n))
    test = Dataset("Small", X, labels, ("a", "b"))
    return small_dataset, test
