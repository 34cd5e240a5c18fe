"""Pure numpy implementations of the metric hot kernels.

These are the fallback for the compiled extension in ``_ckernels.pyx`` and
must produce bit-identical results: KS and Cliff counting are exact integer
arithmetic, and binning uses the same edge rule (edges[j] <= x < edges[j+1],
last bin closed on the right) in both backends.
"""

from __future__ import annotations

import numpy as np


def ks_statistic(sample_0: np.ndarray, sample_1: np.ndarray) -> float:
    """Exact two-sample KS distance sup |F0 - F1| via sorted evaluation.

    The sup of the difference of two right-continuous step functions is
    attained at a data point, evaluating CDFs with side='right'.
    """
    a = np.sort(sample_0)
    b = np.sort(sample_1)
    pooled = np.concatenate([a, b])
    f0 = np.searchsorted(a, pooled, side="right") / a.size
    f1 = np.searchsorted(b, pooled, side="right") / b.size
    return float(np.abs(f0 - f1).max())


def cliff_counts(sample_0: np.ndarray, sample_1: np.ndarray) -> tuple[int, int]:
    """Count pairs with t0 > t1 and t0 < t1 over all n0*n1 pairs (exact)."""
    b = np.sort(sample_1)
    greater = int(np.searchsorted(b, sample_0, side="left").sum())
    less = int((b.size - np.searchsorted(b, sample_0, side="right")).sum())
    return greater, less


def bin_counts(sample: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Histogram counts on shared edges; values equal to the last edge fall
    in the last bin. Values outside [edges[0], edges[-1]] are a caller bug
    and are clamped into the boundary bins."""
    idx = np.searchsorted(edges, sample, side="right") - 1
    np.clip(idx, 0, edges.size - 2, out=idx)
    return np.bincount(idx, minlength=edges.size - 1).astype(np.int64)
