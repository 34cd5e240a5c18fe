"""Distinguishability statistics on a partitioned trace set.

All operations are pure and reentrant. The histogram-based metrics (MI and
overlap) share one set of equal-width bin edges spanning the pooled
min..max range. Degenerate pooled range (all timings identical) means one
occupied bin: MI 0, overlap 1.
"""

from __future__ import annotations

import math

import numpy as np

from ..core import InsufficientDataError, MetricReport, TraceSet, partition
from ..scoring import TlriWeights, snr_proxy, tlri_score
from ._backend import BACKEND, kernels

DEFAULT_BINS = 64

__all__ = [
    "BACKEND",
    "DEFAULT_BINS",
    "descriptive",
    "welch_t",
    "ks_distance",
    "cliffs_delta",
    "binned_mi",
    "overlap",
    "full_report",
]


def _as_array(sample, name: str, minimum: int) -> np.ndarray:
    arr = np.ascontiguousarray(sample, dtype=np.float64)
    if arr.size < minimum:
        raise InsufficientDataError(
            f"{name} has {arr.size} traces, needs at least {minimum}"
        )
    return arr


def descriptive(sample_0, sample_1):
    """Per-class mean and unbiased (n-1) std plus the pooled deviation
    sqrt((s0^2 + s1^2) / 2)."""
    # sorted before accumulation so every statistic is bit-exactly
    # independent of trace order (prefix N of a shuffle == full report)
    a = np.sort(_as_array(sample_0, "class 0", 2))
    b = np.sort(_as_array(sample_1, "class 1", 2))
    mean_0, mean_1 = float(a.mean()), float(b.mean())
    std_0 = float(a.std(ddof=1))
    std_1 = float(b.std(ddof=1))
    pooled = math.sqrt((std_0**2 + std_1**2) / 2.0)
    return mean_0, mean_1, std_0, std_1, pooled


def welch_t(sample_0, sample_1) -> float:
    """Signed Welch statistic (class-0 mean minus class-1 mean).

    When both classes are constant the denominator vanishes: the result is
    0 for a zero gap and a signed infinity otherwise (flagged as degenerate
    in full_report, never raised).
    """
    mean_0, mean_1, std_0, std_1, _ = descriptive(sample_0, sample_1)
    n0, n1 = len(sample_0), len(sample_1)
    denom = math.sqrt(std_0**2 / n0 + std_1**2 / n1)
    gap = mean_0 - mean_1
    if denom == 0.0:
        return 0.0 if gap == 0.0 else math.copysign(math.inf, gap)
    return gap / denom


def ks_distance(sample_0, sample_1) -> float:
    """Exact two-sample Kolmogorov-Smirnov distance sup |F0 - F1|."""
    a = _as_array(sample_0, "class 0", 1)
    b = _as_array(sample_1, "class 1", 1)
    return float(kernels.ks_statistic(a, b))


def cliffs_delta(sample_0, sample_1) -> float:
    """Exact Cliff's delta Pr(t0 > t1) - Pr(t0 < t1); ties contribute 0."""
    a = _as_array(sample_0, "class 0", 1)
    b = _as_array(sample_1, "class 1", 1)
    greater, less = kernels.cliff_counts(a, b)
    return float((int(greater) - int(less)) / (a.size * b.size))


def shared_edges(sample_0: np.ndarray, sample_1: np.ndarray,
                 bins: int) -> np.ndarray | None:
    """Equal-width edges over the pooled min..max; None when the pooled
    range is degenerate (constant timings)."""
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    lo = min(sample_0.min(), sample_1.min())
    hi = max(sample_0.max(), sample_1.max())
    if hi == lo:
        return None
    return np.linspace(lo, hi, bins + 1)


def _joint_counts(sample_0, sample_1, bins):
    a = _as_array(sample_0, "class 0", 1)
    b = _as_array(sample_1, "class 1", 1)
    edges = shared_edges(a, b, bins)
    if edges is None:
        return a, b, None, None
    return a, b, kernels.bin_counts(a, edges), kernels.bin_counts(b, edges)


def _mi_from_counts(c0: np.ndarray, c1: np.ndarray) -> float:
    """Plug-in MI (bits) over the joint (class, bin) table; 0 log 0 = 0."""
    n = c0.sum() + c1.sum()
    mi = 0.0
    for counts, n_s in ((c0, c0.sum()), (c1, c1.sum())):
        p_s = n_s / n
        for b in range(counts.size):
            joint = counts[b] / n
            if joint > 0.0:
                p_b = (c0[b] + c1[b]) / n
                mi += joint * math.log2(joint / (p_s * p_b))
    return float(max(0.0, mi))


def binned_mi(sample_0, sample_1, bins: int = DEFAULT_BINS) -> float:
    """Mutual information (bits) between the secret bit and binned timing."""
    _, _, c0, c1 = _joint_counts(sample_0, sample_1, bins)
    if c0 is None:
        return 0.0
    return _mi_from_counts(c0, c1)


def _overlap_from_counts(c0: np.ndarray, c1: np.ndarray) -> float:
    # integer arithmetic with a single final division: identical count
    # profiles yield exactly 1.0 regardless of bin count
    n0, n1 = int(c0.sum()), int(c1.sum())
    shared = int(np.minimum(c0 * n1, c1 * n0).sum())
    return shared / (n0 * n1)


def overlap(sample_0, sample_1, bins: int = DEFAULT_BINS) -> float:
    """Histogram intersection mass shared by the per-class distributions."""
    _, _, c0, c1 = _joint_counts(sample_0, sample_1, bins)
    if c0 is None:
        return 1.0
    return _overlap_from_counts(c0, c1)


def full_report(traces: TraceSet, bins: int = DEFAULT_BINS,
                weights: TlriWeights | None = None) -> MetricReport:
    """All metrics plus the TLRI score from a single partition and a single
    shared binning."""
    sample_0, sample_1 = partition(traces)
    if sample_0.size < 2 or sample_1.size < 2:
        raise InsufficientDataError(
            f"both classes need >= 2 traces, got n0={sample_0.size}, "
            f"n1={sample_1.size}"
        )
    mean_0, mean_1, std_0, std_1, pooled = descriptive(sample_0, sample_1)
    t_stat = welch_t(sample_0, sample_1)
    ks_d = ks_distance(sample_0, sample_1)
    cliff = cliffs_delta(sample_0, sample_1)
    edges = shared_edges(sample_0, sample_1, bins)
    if edges is None:
        mi, ov = 0.0, 1.0
    else:
        c0 = kernels.bin_counts(sample_0, edges)
        c1 = kernels.bin_counts(sample_1, edges)
        mi = _mi_from_counts(c0, c1)
        ov = _overlap_from_counts(c0, c1)
    snr, snr_degenerate = snr_proxy(mean_0, mean_1, pooled)
    raw, tlri = tlri_score(snr, ks_d, cliff, ov, mi, weights)
    return MetricReport(
        mean_0=mean_0, mean_1=mean_1, std_0=std_0, std_1=std_1,
        pooled_std=pooled, welch_t=t_stat, ks_d=ks_d, cliff_delta=cliff,
        mi_bits=mi, overlap=ov, snr=snr, raw_score=raw, tlri=tlri,
        degenerate=snr_degenerate or not math.isfinite(t_stat),
    )
