"""Feature-elimination strategies: the dispersion / class-correlation /
inter-feature-correlation filter pipeline, CFS merit with best-first forward
search, an exhaustive-search oracle, and Relief weighting."""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .measures import MeasureError, c_correlation, correlation


class SelectionError(ValueError):
    """Raised when selection cannot produce a usable feature set."""


@dataclass(frozen=True)
class SelectionConfig:
    delta: float = 0.05  # dispersion threshold
    tau_c: float = 0.1  # class-correlation floor
    tau_f: float = 0.9  # inter-feature redundancy ceiling
    relief_samples: int = 100
    bffs_patience: int = 5
    seed: int = 42

    def __post_init__(self):
        if self.tau_f > 1.0:
            raise SelectionError("tau_f must be <= 1")
        if self.relief_samples < 1:
            raise SelectionError("relief_samples must be >= 1")
        if self.bffs_patience < 1:
            raise SelectionError("bffs_patience must be >= 1")


@dataclass
class SelectionResult:
    """Kept feature indices plus per-feature elimination audit trail."""

    kept: list[int]
    eliminated: list[tuple[int, str, float]] = field(default_factory=list)
    merit_trace: list[tuple[tuple[int, ...], float]] = field(default_factory=list)
    flags: list[tuple[int, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kept": list(self.kept),
            "eliminated": [
                {"feature": i, "reason": r, "score": s} for i, r, s in self.eliminated
            ],
            "merit_trace": [
                {"subset": list(sub), "merit": m} for sub, m in self.merit_trace
            ],
            "flags": [{"feature": i, "note": n} for i, n in self.flags],
        }


@dataclass(frozen=True)
class Merit:
    """Heuristic subset strength: k*r_cf / sqrt(k + k(k-1)*r_ff)."""

    value: float
    k: int
    r_cf: float
    r_ff: float


def merit_value(k: int, r_cf: float, r_ff: float) -> float:
    return k * r_cf / math.sqrt(k + k * (k - 1) * r_ff)


def _safe_abs_corr(x: np.ndarray, y: np.ndarray) -> float:
    """|Pearson r|, with 0 for zero-variance inputs (no linear relation)."""
    try:
        return abs(correlation(x, y))
    except MeasureError:
        return 0.0


class _CorrelationCache:
    """Lazily memoized class-feature and feature-feature correlations."""

    def __init__(self, d: Dataset):
        self.d = d
        self._cc: dict[int, float] = {}
        self._ff: dict[tuple[int, int], float] = {}

    def cc(self, i: int) -> float:
        if i not in self._cc:
            self._cc[i] = c_correlation(self.d.features[:, i], self.d.labels, self.d.class_count)
        return self._cc[i]

    def ff(self, i: int, j: int) -> float:
        key = (i, j) if i < j else (j, i)
        if key not in self._ff:
            self._ff[key] = _safe_abs_corr(
                self.d.features[:, key[0]], self.d.features[:, key[1]]
            )
        return self._ff[key]


def dispersion_scores(features: np.ndarray) -> np.ndarray:
    """Per-feature |sigma/mean|; NaN marks zero-mean features.

    Single vectorized pass, linear in the number of features.
    """
    means = features.mean(axis=0)
    sigma = np.sqrt(np.mean((features - means) ** 2, axis=0))
    out = np.full(features.shape[1], np.nan)
    nz = means != 0
    out[nz] = np.abs(sigma[nz] / means[nz])
    return out


def f_correlation_matrix(features: np.ndarray) -> np.ndarray:
    """Pairwise |Pearson r| between features; zero-variance rows/cols are 0."""
    n = features.shape[1]
    dev = features - features.mean(axis=0)
    norms = np.sqrt((dev**2).sum(axis=0))
    ok = norms > 0
    scaled = np.zeros_like(dev)
    scaled[:, ok] = dev[:, ok] / norms[ok]
    r = np.abs(scaled.T @ scaled)
    np.fill_diagonal(r, 1.0)
    r[~ok, :] = 0.0
    r[:, ~ok] = 0.0
    return np.clip(r, 0.0, 1.0)


def ife_cf(train: Dataset, cfg: SelectionConfig) -> SelectionResult:
    """Three sequential elimination passes.

    1. Drop features with coefficient of dispersion below ``delta``
       (zero-mean features are exempt and flagged).
    2. Drop features whose class correlation falls below ``tau_c``.
    3. Walk survivors in descending class correlation; drop any later
       feature whose inter-feature correlation with a kept one exceeds
       ``tau_f``.
    """
    result = SelectionResult(kept=[])
    cache = _CorrelationCache(train)

    disp = dispersion_scores(train.features)
    alive = []
    for j in range(train.n_features):
        if math.isnan(disp[j]):
            result.flags.append((j, "zero-mean: dispersion undefined, pass skipped"))
            alive.append(j)
        elif disp[j] < cfg.delta:
            result.eliminated.append((j, "low-dispersion", float(disp[j])))
        else:
            alive.append(j)

    survivors = []
    for j in alive:
        cc = cache.cc(j)
        if abs(cc) < cfg.tau_c:
            result.eliminated.append((j, "low-c-correlation", cc))
        else:
            survivors.append(j)

    # descending relevance; equal scores keep the lower index first
    order = sorted(survivors, key=lambda j: (-cache.cc(j), j))
    dropped: set[int] = set()
    if order:
        rmat = f_correlation_matrix(train.features[:, order])
        for pos, j in enumerate(order):
            if j in dropped:
                continue
            for qos in range(pos + 1, len(order)):
                k = order[qos]
                if k in dropped:
                    continue
                r = float(rmat[pos, qos])
                if r > cfg.tau_f:
                    dropped.add(k)
                    result.eliminated.append((k, f"redundant-with({j})", r))

    result.kept = sorted(j for j in order if j not in dropped)
    if not result.kept:
        raise SelectionError("all features eliminated; relax delta/tau_c/tau_f")
    return result


def cfs_merit(train: Dataset, subset, cache: _CorrelationCache | None = None) -> Merit:
    """Merit of a feature subset from mean class-feature and mean pairwise
    feature-feature correlation magnitudes."""
    subset = sorted(set(int(s) for s in subset))
    if not subset:
        raise SelectionError("empty subset has no merit")
    if any(s < 0 or s >= train.n_features for s in subset):
        raise SelectionError("subset index out of range")
    cache = cache or _CorrelationCache(train)
    k = len(subset)
    r_cf = sum(abs(cache.cc(j)) for j in subset) / k
    if k == 1:
        r_ff = 0.0
    else:
        pairs = list(itertools.combinations(subset, 2))
        r_ff = sum(cache.ff(i, j) for i, j in pairs) / len(pairs)
    return Merit(merit_value(k, r_cf, r_ff), k, r_cf, r_ff)


def cfs_search(train: Dataset, cfg: SelectionConfig) -> SelectionResult:
    """Best-first forward search over feature subsets.

    Starts from the empty set, expands the best open subset by one unused
    feature at a time, and stops after ``bffs_patience`` consecutive
    expansions that fail to improve the best merit seen.
    """
    cache = _CorrelationCache(train)
    trace: list[tuple[tuple[int, ...], float]] = []
    open_heap: list[tuple[float, tuple[int, ...]]] = [(0.0, ())]
    seen: set[tuple[int, ...]] = {()}
    best_subset: tuple[int, ...] = ()
    best_merit = -math.inf
    stall = 0
    n = train.n_features
    while open_heap and stall < cfg.bffs_patience:
        _, subset = heapq.heappop(open_heap)
        improved = False
        for f in range(n):
            if f in subset:
                continue
            child = tuple(sorted(subset + (f,)))
            if child in seen:
                continue
            seen.add(child)
            m = cfs_merit(train, child, cache).value
            trace.append((child, m))
            heapq.heappush(open_heap, (-m, child))
            if m > best_merit + 1e-12:
                best_merit, best_subset = m, child
                improved = True
        if subset:  # root expansion just seeds the singletons
            stall = 0 if improved else stall + 1
    kept = sorted(best_subset)
    eliminated = [
        (j, "not-in-best-subset", cache.cc(j)) for j in range(n) if j not in best_subset
    ]
    return SelectionResult(kept=kept, eliminated=eliminated, merit_trace=trace)


def exhaustive_search(train: Dataset, max_n: int = 20) -> SelectionResult:
    """Evaluate every non-empty subset; ties prefer fewer features, then
    lexicographic order. Test oracle for cfs_search; exponential cost."""
    n = train.n_features
    if n > max_n:
        raise SelectionError(f"exhaustive search capped at N={max_n}, got N={n}")
    cache = _CorrelationCache(train)
    trace = []
    best_subset, best_merit = None, -math.inf
    for k in range(1, n + 1):
        for subset in itertools.combinations(range(n), k):
            m = cfs_merit(train, subset, cache).value
            trace.append((subset, m))
            if m > best_merit:
                best_merit, best_subset = m, subset
    kept = list(best_subset)
    eliminated = [(j, "not-in-best-subset", cache.cc(j)) for j in range(n) if j not in best_subset]
    return SelectionResult(kept=kept, eliminated=eliminated, merit_trace=trace)


@dataclass(frozen=True)
class ReliefWeights:
    weights: np.ndarray

    def to_list(self) -> list[float]:
        return [float(w) for w in self.weights]


def relief(train: Dataset, cfg: SelectionConfig) -> ReliefWeights:
    """Relief relevance weights.

    For each of n seeded random picks, find the nearest same-class hit and
    nearest other-class miss by Euclidean distance, then move each feature
    weight away from the hit difference and toward the miss difference.
    Differences are range-normalized so weights stay in [-1, 1].
    """
    m, nfeat = train.features.shape
    n = min(cfg.relief_samples, m)
    for c in range(train.class_count):
        if 0 < (train.labels == c).sum() < 2:
            raise SelectionError(
                f"class {train.class_names[c]!r} has a single instance; no hit exists"
            )
    span = train.features.max(axis=0) - train.features.min(axis=0)
    scale = np.where(span > 0, span, 1.0)
    x = train.features / scale  # constant features diff to 0 regardless
    rng = np.random.default_rng(cfg.seed)
    picks = rng.choice(m, size=n, replace=False)
    w = np.zeros(nfeat)
    for i in picks:
        diffs = np.abs(x - x[i])
        dists = np.sqrt((diffs**2).sum(axis=1))
        dists[i] = np.inf
        same = train.labels == train.labels[i]
        hit_d = np.where(same, dists, np.inf)
        miss_d = np.where(~same, dists, np.inf)
        hit = int(np.argmin(hit_d))
        miss = int(np.argmin(miss_d))
        w += (diffs[miss] ** 2 - diffs[hit] ** 2) / n
    return ReliefWeights(w)


def apply_selection(d: Dataset, r: SelectionResult) -> Dataset:
    """Project the dataset onto the kept columns, in kept order."""
    arity = len(r.kept) + len(r.eliminated)
    if arity != d.n_features:
        raise SelectionError(
            f"selection covers {arity} features, dataset has {d.n_features}"
        )
    return d.project(r.kept)
