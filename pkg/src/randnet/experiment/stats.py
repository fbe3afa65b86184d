"""Summary statistics, the Wilcoxon signed-rank test and weight histograms."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.stats import rankdata

from ..errors import InvalidInputError

# Largest sample size for which the exact null distribution is used; beyond
# this the normal approximation with tie correction takes over.
EXACT_MAX_N = 25


class WilcoxonResult(NamedTuple):
    statistic: float
    p_value: float


def _exact_p(doubled_ranks: np.ndarray, doubled_stat: int) -> float:
    """Two-sided exact p-value by convolving the signed-rank lattice.

    Ranks are doubled so tied (half-integer) average ranks become integers;
    the array of subset-sum counts then enumerates all 2^n sign assignments.
    """
    total = int(doubled_ranks.sum())
    counts = np.zeros(total + 1, dtype=np.int64)
    counts[0] = 1
    for r in doubled_ranks:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: counts.size - r]
        counts = counts + shifted
    n_le = int(counts[: doubled_stat + 1].sum())
    n_ge = int(counts[total - doubled_stat :].sum())
    return min(1.0, (n_le + n_ge) / 2 ** len(doubled_ranks))


def wilcoxon_signed_rank(a, b) -> WilcoxonResult:
    """Two-sided paired signed-rank test.

    Zero differences are dropped; tied magnitudes share average ranks. The
    statistic is min(W+, W-). Small samples (post-drop n <= 25) use the
    exact permutation distribution; larger ones use the normal approximation
    with tie correction and a 0.5 continuity correction. If every difference
    is zero the test is degenerate and (0.0, 1.0) is returned.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise InvalidInputError(f"paired samples differ in length: {a.size} vs {b.size}")
    if a.size < 6:
        raise InvalidInputError(f"need at least 6 pairs, got {a.size}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise InvalidInputError("paired samples contain non-finite values")

    d = a - b
    d = d[d != 0.0]
    n = d.size
    if n == 0:
        return WilcoxonResult(0.0, 1.0)

    ranks = rankdata(np.abs(d), method="average")
    w_pos = float(ranks[d > 0].sum())
    w_neg = float(ranks[d < 0].sum())
    stat = min(w_pos, w_neg)

    if n <= EXACT_MAX_N:
        doubled = np.rint(2.0 * ranks).astype(np.int64)
        p = _exact_p(doubled, int(round(2.0 * stat)))
        return WilcoxonResult(stat, p)

    mu = n * (n + 1) / 4.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    tie_term = float(np.sum(tie_counts**3 - tie_counts)) / 48.0
    sigma = math.sqrt(n * (n + 1) * (2 * n + 1) / 24.0 - tie_term)
    if sigma == 0.0:
        return WilcoxonResult(stat, 1.0)
    z = (stat - mu + 0.5) / sigma
    p = min(1.0, math.erfc(-z / math.sqrt(2.0)))
    return WilcoxonResult(stat, p)


def summarize(values) -> dict:
    """Mean, sample std, median, 10th/90th percentiles and range of a sample."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise InvalidInputError("cannot summarize an empty sample")
    return {
        "count": int(v.size),
        "mean": float(np.mean(v)),
        "std": float(np.std(v, ddof=1)) if v.size > 1 else 0.0,
        "median": float(np.median(v)),
        "p10": float(np.percentile(v, 10)),
        "p90": float(np.percentile(v, 90)),
        "min": float(np.min(v)),
        "max": float(np.max(v)),
    }


class Histogram(NamedTuple):
    edges: np.ndarray
    counts: np.ndarray


def weight_histogram(reports, bins: int = 50) -> Histogram:
    """Pooled histogram of hidden-weight snapshots across trial reports."""
    pools = [r.weights.ravel() for r in reports if r.weights is not None]
    if not pools:
        raise InvalidInputError("no weight snapshots recorded; rerun with snapshots on")
    if bins < 1:
        raise InvalidInputError(f"bins must be >= 1, got {bins}")
    pooled = np.concatenate(pools)
    counts, edges = np.histogram(pooled, bins=bins)
    return Histogram(edges=edges, counts=counts)
