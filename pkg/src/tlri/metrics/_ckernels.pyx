# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled metric hot kernels.

Must stay bit-identical to the pure numpy fallback in ``_kernels_py.py``:
KS and Cliff counting are exact integer arithmetic; binning follows the
same edge rule (edges[j] <= x < edges[j+1], last bin closed on the right).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def ks_statistic(sample_0, sample_1):
    """Exact two-sample KS distance via a merge of the two sorted samples."""
    cdef cnp.float64_t[::1] a = np.sort(np.ascontiguousarray(sample_0, dtype=np.float64))
    cdef cnp.float64_t[::1] b = np.sort(np.ascontiguousarray(sample_1, dtype=np.float64))
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef Py_ssize_t i = 0, j = 0
    cdef double d = 0.0, diff, x
    while i < na or j < nb:
        if j >= nb or (i < na and a[i] <= b[j]):
            x = a[i]
        else:
            x = b[j]
        # consume every tied value from both samples before evaluating
        while i < na and a[i] == x:
            i += 1
        while j < nb and b[j] == x:
            j += 1
        diff = (<double>i) / na - (<double>j) / nb
        if diff < 0:
            diff = -diff
        if diff > d:
            d = diff
    return d


def cliff_counts(sample_0, sample_1):
    """Count pairs with t0 > t1 and t0 < t1 over all n0*n1 pairs (exact)."""
    cdef cnp.float64_t[::1] a = np.ascontiguousarray(sample_0, dtype=np.float64)
    cdef cnp.float64_t[::1] b = np.sort(np.ascontiguousarray(sample_1, dtype=np.float64))
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef long long greater = 0, less = 0
    cdef Py_ssize_t i, lo, hi, mid
    cdef double x
    for i in range(na):
        x = a[i]
        # lower bound: first index with b[idx] >= x
        lo = 0
        hi = nb
        while lo < hi:
            mid = (lo + hi) >> 1
            if b[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        greater += lo
        # upper bound: first index with b[idx] > x
        hi = nb
        while lo < hi:
            mid = (lo + hi) >> 1
            if b[mid] <= x:
                lo = mid + 1
            else:
                hi = mid
        less += nb - lo
    return int(greater), int(less)


def bin_counts(sample, edges):
    """Histogram counts on shared edges, matching the fallback's edge rule."""
    cdef cnp.float64_t[::1] xs = np.ascontiguousarray(sample, dtype=np.float64)
    cdef cnp.float64_t[::1] e = np.ascontiguousarray(edges, dtype=np.float64)
    cdef Py_ssize_t n = xs.shape[0], nbins = e.shape[0] - 1
    out = np.zeros(nbins, dtype=np.int64)
    cdef cnp.int64_t[::1] counts = out
    cdef Py_ssize_t i, lo, hi, mid
    cdef double x
    for i in range(n):
        x = xs[i]
        # searchsorted(e, x, side='right') - 1
        lo = 0
        hi = e.shape[0]
        while lo < hi:
            mid = (lo + hi) >> 1
            if e[mid] <= x:
                lo = mid + 1
            else:
                hi = mid
        lo -= 1
        if lo < 0:
            lo = 0
        elif lo > nbins - 1:
            lo = nbins - 1
        counts[lo] += 1
    return out
