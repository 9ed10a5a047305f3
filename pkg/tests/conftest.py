import sys
from pathlib import Path

import numpy as np
import pytest

from ifecf.data import Dataset, write_csv

sys.path.insert(0, str(Path(__file__).parent))


def make_dataset(features, labels, class_names=None):
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if class_names is None:
        class_names = tuple(str(c) for c in range(labels.max() + 1))
    names = tuple(f"f{j}" for j in range(features.shape[1]))
    return Dataset(features, labels, names, class_names)


def random_dataset(rng, m=40, n=5, classes=2):
    """Random dataset with a few class-informative features."""
    labels = rng.integers(0, classes, size=m)
    x = rng.normal(size=(m, n))
    for j in range(n):
        x[:, j] += rng.uniform(0, 2) * labels
    return make_dataset(x, labels)


def pima_like(seed=7, m=768, n=8, majority=500):
    """Shape-matched stand-in for the 768x8 two-class diabetes benchmark.

    Majority class has exactly ``majority`` rows so the majority-rate
    baseline matches the public set's 65.1%. Three features carry class
    signal; the rest are noise on realistic-looking positive scales.
    """
    rng = np.random.default_rng(seed)
    labels = np.zeros(m, dtype=np.int64)
    labels[majority:] = 1
    labels = labels[rng.permutation(m)]
    scales = np.array([3.0, 30.0, 12.0, 10.0, 80.0, 7.0, 0.3, 11.0])[:n]
    offsets = np.array([3.0, 120.0, 70.0, 20.0, 80.0, 32.0, 0.4, 33.0])[:n]
    x = rng.normal(size=(m, n)) * scales + offsets
    for j, strength in ((1, 1.2), (5, 0.8), (7, 0.5)):
        x[:, j] += strength * scales[j] * labels
    x = np.abs(x)
    return make_dataset(x, labels, class_names=("0", "1"))


@pytest.fixture(scope="session")
def pima_dataset():
    return pima_like()


@pytest.fixture(scope="session")
def pima_csv(tmp_path_factory, pima_dataset):
    path = tmp_path_factory.mktemp("data") / "pima_like.csv"
    write_csv(pima_dataset, path)
    return path
