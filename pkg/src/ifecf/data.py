"""Tabular dataset loading, validation, train/test splitting and min-max
normalization. Every other module consumes the immutable Dataset defined here."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class DataError(ValueError):
    """Raised for malformed input files or invalid dataset operations."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Dataset:
    """M instances by N numeric features plus an integer class label per row.

    Labels are contiguous ids; ``class_names`` maps each id back to the
    original token from the source file. Arrays are read-only so instances
    can be shared freely across threads.
    """

    features: np.ndarray  # (M, N) float64
    labels: np.ndarray  # (M,) int64
    feature_names: tuple[str, ...]
    class_names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "features", _freeze(np.asarray(self.features, dtype=np.float64)))
        object.__setattr__(self, "labels", _freeze(np.asarray(self.labels, dtype=np.int64)))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "class_names", tuple(self.class_names))
        m, n = self.features.shape
        if m < 1 or n < 1:
            raise DataError(f"dataset must have at least 1 row and 1 feature, got {m}x{n}")
        if self.labels.shape != (m,):
            raise DataError("label vector length does not match instance count")
        if len(self.feature_names) != n:
            raise DataError("feature_names length does not match feature count")
        if not np.all(np.isfinite(self.features)):
            raise DataError("non-finite feature value")
        if self.labels.min(initial=0) < 0 or self.labels.max(initial=0) >= len(self.class_names):
            raise DataError("label id outside class table")

    @property
    def n_instances(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def class_count(self) -> int:
        return len(self.class_names)

    def take(self, rows: np.ndarray) -> "Dataset":
        """Row subset; keeps the parent's class table (a partition may miss a class)."""
        return Dataset(self.features[rows], self.labels[rows], self.feature_names, self.class_names)

    def project(self, cols: list[int]) -> "Dataset":
        """Column subset in the given order; labels untouched."""
        if any(c < 0 or c >= self.n_features for c in cols):
            raise DataError(f"feature index out of range for N={self.n_features}")
        if not cols:
            raise DataError("cannot project onto an empty feature set")
        names = tuple(self.feature_names[c] for c in cols)
        return Dataset(self.features[:, cols], self.labels, names, self.class_names)


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float
    seed: int = 42
    stratified: bool = False

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise DataError(f"train_fraction must be in (0,1), got {self.train_fraction}")


@dataclass(frozen=True)
class NormalizationParams:
    """Per-feature train-set min and max for affine [0,1] scaling."""

    mins: np.ndarray
    maxs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mins", _freeze(np.asarray(self.mins, dtype=np.float64)))
        object.__setattr__(self, "maxs", _freeze(np.asarray(self.maxs, dtype=np.float64)))


def load_csv(path, class_column=None, delimiter: str = ",") -> Dataset:
    """Load a delimited text file with a header row into a Dataset.

    ``class_column`` selects the label column by name or 0-based index;
    default is the last column. Labels map to contiguous integer ids in
    first-appearance order.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    with path.open("r", encoding="utf-8", newline="") as fh:
        if delimiter == " ":
            rows = [line.split() for line in fh if line.strip()]
        else:
            rows = [r for r in csv.reader(fh, delimiter=delimiter) if r]
    if len(rows) < 2:
        raise DataError(f"{path}: need a header row and at least one data row")
    header = [c.strip() for c in rows[0]]
    arity = len(header)
    if class_column is None:
        class_idx = arity - 1
    elif isinstance(class_column, int):
        if not 0 <= class_column < arity:
            raise DataError(f"class column index {class_column} out of range")
        class_idx = class_column
    else:
        try:
            class_idx = header.index(class_column)
        except ValueError:
            raise DataError(f"class column {class_column!r} not in header {header}") from None

    feature_names = tuple(h for i, h in enumerate(header) if i != class_idx)
    feat_rows: list[list[float]] = []
    label_tokens: list[str] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != arity:
            raise DataError(f"{path}:{lineno}: expected {arity} cells, got {len(row)}")
        vals = []
        for j, cell in enumerate(row):
            if j == class_idx:
                continue
            try:
                v = float(cell)
            except ValueError:
                raise DataError(
                    f"{path}:{lineno}: non-numeric value {cell!r} in column {header[j]!r}"
                ) from None
            if not math.isfinite(v):
                raise DataError(f"{path}:{lineno}: non-finite value in column {header[j]!r}")
            vals.append(v)
        feat_rows.append(vals)
        label_tokens.append(row[class_idx].strip())

    class_names: list[str] = []
    ids = {}
    labels = []
    for tok in label_tokens:
        if tok not in ids:
            ids[tok] = len(class_names)
            class_names.append(tok)
        labels.append(ids[tok])
    if len(class_names) < 2:
        raise DataError(f"{path}: single-class dataset, classification undefined")
    if len(feat_rows) < 2:
        raise DataError(f"{path}: need at least 2 instances")
    return Dataset(np.array(feat_rows), np.array(labels), feature_names, tuple(class_names))


def write_csv(d: Dataset, path, delimiter: str = ",") -> None:
    """Write a Dataset back out; values use repr so reloads are bit-exact."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter=delimiter)
        w.writerow(list(d.feature_names) + ["class"])
        for i in range(d.n_instances):
            w.writerow([repr(float(v)) for v in d.features[i]] + [d.class_names[d.labels[i]]])


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def split(d: Dataset, s: SplitSpec) -> tuple[Dataset, Dataset]:
    """Deterministic seeded train/test partition.

    Plain mode shuffles all indices; stratified mode shuffles within each
    class and allocates train counts by largest remainder so per-class
    proportions hold within rounding.
    """
    m = d.n_instances
    n_train = _round_half_up(s.train_fraction * m)
    if n_train < 1 or n_train >= m:
        raise DataError(
            f"fraction {s.train_fraction} on M={m} leaves an empty partition"
        )
    rng = np.random.default_rng(s.seed)
    if not s.stratified:
        order = rng.permutation(m)
        train_idx, test_idx = order[:n_train], order[n_train:]
    else:
        class_rows = [np.flatnonzero(d.labels == c) for c in range(d.class_count)]
        class_rows = [r for r in class_rows if r.size > 0]
        if any(r.size < 2 for r in class_rows):
            raise DataError("stratified split impossible: a class has a single instance")
        targets = [s.train_fraction * r.size for r in class_rows]
        counts = [int(math.floor(t)) for t in targets]
        # clamp so each partition keeps at least one instance per class
        counts = [min(max(c, 1), r.size - 1) for c, r in zip(counts, class_rows)]
        remainders = sorted(
            range(len(class_rows)),
            key=lambda i: (targets[i] - math.floor(targets[i])),
            reverse=True,
        )
        deficit = n_train - sum(counts)
        for i in remainders if deficit > 0 else reversed(remainders):
            if deficit == 0:
                break
            if deficit > 0 and counts[i] < class_rows[i].size - 1:
                counts[i] += 1
                deficit -= 1
            elif deficit < 0 and counts[i] > 1:
                counts[i] -= 1
                deficit += 1
        if deficit != 0:
            raise DataError("stratified split impossible at this fraction")
        train_parts, test_parts = [], []
        for rows, c in zip(class_rows, counts):
            order = rows[rng.permutation(rows.size)]
            train_parts.append(order[:c])
            test_parts.append(order[c:])
        train_idx = np.concatenate(train_parts)
        test_idx = np.concatenate(test_parts)
    return d.take(np.sort(train_idx)), d.take(np.sort(test_idx))


def fit_normalizer(train: Dataset) -> NormalizationParams:
    return NormalizationParams(train.features.min(axis=0), train.features.max(axis=0))


def apply_normalizer(d: Dataset, p: NormalizationParams) -> Dataset:
    """Affine per-feature map by train min/max; constant features go to 0.5.

    Test values may land outside [0,1]; no clipping.
    """
    if p.mins.shape[0] != d.n_features:
        raise DataError(
            f"normalizer fitted on N={p.mins.shape[0]}, dataset has N={d.n_features}"
        )
    span = p.maxs - p.mins
    out = np.empty_like(d.features)
    const = span == 0
    out[:, const] = 0.5
    nc = ~const
    out[:, nc] = (d.features[:, nc] - p.mins[nc]) / span[nc]
    return Dataset(out, d.labels, d.feature_names, d.class_names)
