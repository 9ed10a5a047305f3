"""Independent brute-force reference implementations, pure-python loops only.

These deliberately avoid numpy vector paths so they cannot share a bug with
the library code they check.
"""

import math
from itertools import combinations


def corr_oracle(x, y):
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    num = sum((a - mx) * (b - my) for a, b in zip(x, y))
    dx = math.sqrt(sum((a - mx) ** 2 for a in x))
    dy = math.sqrt(sum((b - my) ** 2 for b in y))
    return num / (dx * dy)


def entropy_oracle(probs):
    return -sum(p * math.log2(p) for p in probs if p > 0)


def cond_entropy_oracle(a, b):
    n = len(a)
    total = 0.0
    for bv in set(b):
        rows = [av for av, x in zip(a, b) if x == bv]
        counts = {}
        for av in rows:
            counts[av] = counts.get(av, 0) + 1
        h = -sum((c / len(rows)) * math.log2(c / len(rows)) for c in counts.values())
        total += (len(rows) / n) * h
    return total


def info_gain_oracle(a, b):
    counts = {}
    for av in a:
        counts[av] = counts.get(av, 0) + 1
    n = len(a)
    h = -sum((c / n) * math.log2(c / n) for c in counts.values())
    return h - cond_entropy_oracle(a, b)


def dispersion_oracle(x):
    n = len(x)
    mean = sum(x) / n
    var = sum((v - mean) ** 2 for v in x) / n
    return abs(math.sqrt(var) / mean)


def merit_oracle(k, r_cf, r_ff):
    return k * r_cf / math.sqrt(k + k * (k - 1) * r_ff)


def exhaustive_best_merit(n_features, merit_fn):
    """Max merit over all non-empty subsets, computed by plain enumeration."""
    best = -math.inf
    for k in range(1, n_features + 1):
        for subset in combinations(range(n_features), k):
            best = max(best, merit_fn(subset))
    return best
