import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tlri.core import InsufficientDataError, TraceSet
from tlri.leakage import generate_traces
from tlri.metrics import (
    binned_mi,
    cliffs_delta,
    descriptive,
    full_report,
    ks_distance,
    overlap,
    welch_t,
)

from conftest import make_scenario, rng_array

samples = st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=200)
samples2 = st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=200)


# ---------------------------------------------------------------- oracles

def ks_reference(a, b):
    """Quadratic reference: evaluate |F0 - F1| at every pooled point."""
    a, b = np.asarray(a, float), np.asarray(b, float)
    best = 0.0
    for x in np.concatenate([a, b]):
        f0 = (a <= x).sum() / a.size
        f1 = (b <= x).sum() / b.size
        best = max(best, abs(f0 - f1))
    return best


def cliff_brute(a, b):
    """O(n0*n1) double loop."""
    greater = sum(1 for x in a for y in b if x > y)
    less = sum(1 for x in a for y in b if x < y)
    return (greater - less) / (len(a) * len(b))


# ----------------------------------------------------------- descriptive

def test_descriptive_symmetric_case():
    out = descriptive([1, 2, 3], [1, 2, 3])
    assert out == (2.0, 2.0, 1.0, 1.0, 1.0)


def test_descriptive_degenerate_variance():
    m0, m1, s0, s1, pooled = descriptive([0, 0], [4, 4])
    assert (s0, s1, pooled) == (0.0, 0.0, 0.0)


def test_descriptive_hand_computed_std():
    # sum of squared deviations = 32, n-1 = 7
    _, _, s0, _, _ = descriptive([2, 4, 4, 4, 5, 5, 7, 9], [0, 1])
    assert s0 == pytest.approx(math.sqrt(32 / 7), abs=1e-12)


def test_descriptive_rejects_single_point_class():
    with pytest.raises(InsufficientDataError, match="class 1"):
        descriptive([1, 2, 3], [5])


# ---------------------------------------------------------------- welch

def test_welch_identical_samples_zero():
    assert welch_t([1, 2, 3], [1, 2, 3]) == 0.0


def test_welch_closed_form_example():
    # means 3 vs 4, var 2.5 each, denom = sqrt(2.5/5 * 2) = 1
    assert welch_t([1, 2, 3, 4, 5], [2, 3, 4, 5, 6]) == pytest.approx(-1.0, abs=1e-12)


def test_welch_grows_as_sqrt_n():
    # equal variances, gap 1: t = 1 / sqrt(2 * var / n) = sqrt((n-1)/2)
    # since the (n-1)-denominator variance of the {x-1, x+1} pattern is
    # n/(n-1); |t| therefore grows as sqrt(n)
    for reps in (10, 40, 160):
        n = 2 * reps
        a = [9, 11] * reps
        b = [8, 10] * reps
        assert abs(welch_t(a, b)) == pytest.approx(math.sqrt((n - 1) / 2),
                                                   rel=1e-12)


def test_welch_degenerate_is_sentinel_not_crash():
    assert welch_t([5, 5], [5, 5]) == 0.0
    assert welch_t([6, 6], [5, 5]) == math.inf
    assert welch_t([4, 4], [5, 5]) == -math.inf


# ------------------------------------------------------------------- ks

def test_ks_identical_zero():
    assert ks_distance([1, 2, 3], [1, 2, 3]) == 0.0


def test_ks_disjoint_supports_one():
    assert ks_distance([1, 2, 3], [10, 11, 12]) == 1.0


def test_ks_hand_case():
    assert ks_distance([1, 2, 3, 4], [3, 4, 5, 6]) == 0.5


def test_ks_matches_quadratic_reference_on_random_instances():
    for seed in range(100):
        gen = np.random.Generator(np.random.PCG64(seed))
        a = gen.integers(0, 20, gen.integers(1, 60)).astype(float)
        b = gen.integers(0, 20, gen.integers(1, 60)).astype(float)
        assert ks_distance(a, b) == pytest.approx(ks_reference(a, b), abs=0), \
            (a.tolist(), b.tolist())


def test_ks_rejects_empty():
    with pytest.raises(InsufficientDataError):
        ks_distance([], [1.0])


# ---------------------------------------------------------------- cliff

def test_cliff_all_ties_zero():
    assert cliffs_delta([5], [5]) == 0.0


def test_cliff_complete_dominance():
    assert cliffs_delta([10, 11], [1, 2]) == 1.0


def test_cliff_hand_case():
    assert cliffs_delta([1, 2, 3], [2, 3, 4]) == pytest.approx(-5 / 9, abs=1e-15)


def test_cliff_fast_path_equals_brute_force():
    for seed in range(200):
        gen = np.random.Generator(np.random.PCG64(seed))
        a = gen.integers(0, 15, gen.integers(1, 50)).astype(float)
        b = gen.integers(0, 15, gen.integers(1, 50)).astype(float)
        assert cliffs_delta(a, b) == cliff_brute(a.tolist(), b.tolist())


# ------------------------------------------------------------ histogram

def test_mi_identical_multisets_zero():
    assert binned_mi([1, 2, 3, 4], [1, 2, 3, 4], bins=8) == 0.0


def test_mi_perfect_separation_one_bit():
    a = [1.0] * 50
    b = [9.0] * 50
    assert binned_mi(a, b, bins=2) == pytest.approx(1.0, abs=1e-12)


def test_mi_hand_computed_joint_table():
    # joint table (2/6, 1/6; 1/6, 2/6)
    expected = 2 * (1 / 3) * math.log2(4 / 3) + 2 * (1 / 6) * math.log2(2 / 3)
    assert binned_mi([1, 1, 9], [1, 9, 9], bins=2) == pytest.approx(expected, abs=1e-9)


def test_mi_constant_timings_zero_not_error():
    assert binned_mi([5, 5], [5, 5], bins=16) == 0.0


def test_overlap_identical_one():
    assert overlap([1, 2, 3], [1, 2, 3], bins=4) == 1.0


def test_overlap_disjoint_zero():
    assert overlap([1.0, 1.1], [9.0, 9.1], bins=16) == 0.0


def test_overlap_hand_case():
    assert overlap([1, 1, 9], [1, 9, 9], bins=2) == pytest.approx(2 / 3, abs=1e-12)


def test_mi_rejects_single_bin():
    with pytest.raises(ValueError):
        binned_mi([1, 2], [3, 4], bins=1)


# ------------------------------------------------------------ properties

@given(samples2)
@settings(max_examples=50)
def test_self_metrics(a):
    arr = np.array(a)
    assert ks_distance(arr, arr) == 0.0
    assert cliffs_delta(arr, arr) == 0.0
    assert overlap(arr, arr, 16) == 1.0
    assert binned_mi(arr, arr, 16) == pytest.approx(0.0, abs=1e-12)


@given(samples, samples)
@settings(max_examples=50)
def test_antisymmetry(a, b):
    assert cliffs_delta(a, b) == -cliffs_delta(b, a)
    assert ks_distance(a, b) == ks_distance(b, a)
    if len(a) >= 2 and len(b) >= 2:
        ta, tb = welch_t(a, b), welch_t(b, a)
        if math.isfinite(ta):
            assert ta == pytest.approx(-tb, rel=1e-9, abs=1e-12)


int_samples = st.lists(st.integers(-1000, 1000), min_size=2, max_size=100)


@given(int_samples, int_samples,
       st.floats(-1e5, 1e5), st.floats(0.01, 100))
@settings(max_examples=50)
def test_shift_scale_invariance_of_order_metrics(a, b, shift, scale):
    # integer-valued samples so the transform can never merge or reorder
    # distinct values through rounding
    a, b = np.array(a, float), np.array(b, float)
    a2, b2 = a * scale + shift, b * scale + shift
    assert ks_distance(a, b) == ks_distance(a2, b2)
    assert cliffs_delta(a, b) == cliffs_delta(a2, b2)
    ta, tb = welch_t(a, b), welch_t(a2, b2)
    if math.isfinite(ta):
        assert ta == pytest.approx(tb, rel=1e-6, abs=1e-9)


def test_shift_scale_invariance_of_histogram_metrics():
    gen = np.random.Generator(np.random.PCG64(77))
    a = gen.normal(100, 5, 4000)
    b = gen.normal(103, 5, 4000)
    for shift, scale in ((1000.0, 1.0), (0.0, 3.7), (-250.0, 0.04)):
        a2, b2 = a * scale + shift, b * scale + shift
        assert binned_mi(a, b, 64) == pytest.approx(binned_mi(a2, b2, 64), abs=1e-9)
        assert overlap(a, b, 64) == pytest.approx(overlap(a2, b2, 64), abs=1e-9)


@given(samples, samples, st.integers(2, 64))
@settings(max_examples=50)
def test_mi_bounded_by_binary_entropy(a, b, bins):
    assert 0 <= binned_mi(a, b, bins) <= min(1.0, math.log2(bins)) + 1e-12


# ------------------------------------------------------------ full report

def test_full_report_null_case_bounds(kyber):
    # alpha=0 idle at the shipped preset seed; bounds verified by a 50-seed
    # simulation (see test below for the distribution-wide version)
    scenario = make_scenario(leak="none", alpha=0.0, n=20_000)
    report = full_report(generate_traces(scenario, kyber), bins=64)
    assert abs(report.welch_t) < 4
    assert report.ks_d < 0.02
    assert abs(report.cliff_delta) < 0.02
    assert report.mi_bits < 0.003
    assert report.overlap > 0.95


def test_full_report_null_bounds_across_seeds(kyber):
    # measured null bounds over 10 derived seeds (50-seed oracle gave
    # ks<=0.023, |cliff|<=0.021, mi<=0.0035, overlap>=0.954)
    for seed in range(10):
        scenario = make_scenario(leak="none", alpha=0.0, n=20_000,
                                 master_seed=seed)
        report = full_report(generate_traces(scenario, kyber), bins=64)
        assert abs(report.welch_t) < 4
        assert report.ks_d < 0.025
        assert abs(report.cliff_delta) < 0.025
        assert report.mi_bits < 0.004
        assert report.overlap > 0.95


def test_full_report_ks_and_cliff_increase_together(matrix):
    # stronger scenarios score higher on both distributional metrics
    from tlri.runner import run_matrix

    run = run_matrix(matrix)
    rows = sorted((r for _, r in run.rows), key=lambda r: r.ks_d)
    cliffs = [abs(r.cliff_delta) for r in rows]
    # monotone association: Spearman-style check via sortedness tolerance
    violations = sum(1 for x, y in zip(cliffs, cliffs[1:]) if y < x - 0.02)
    assert violations == 0


def test_full_report_rejects_single_class():
    traces = TraceSet(secrets=np.zeros(100, dtype=int),
                      timings=rng_array(0, 100))
    with pytest.raises(InsufficientDataError):
        full_report(traces)


def test_full_report_range_invariants(matrix):
    from tlri.runner import run_matrix

    run = run_matrix(matrix)
    for scenario, r in run.rows:
        assert 0 <= r.ks_d <= 1
        assert -1 <= r.cliff_delta <= 1
        assert 0 <= r.mi_bits <= min(1.0, math.log2(matrix.bins)) + 1e-12
        assert 0 <= r.overlap <= 1
        assert 0 < r.tlri < 1
        assert r.snr >= 0
        assert r.std_0 >= 0 and r.std_1 >= 0 and r.pooled_std >= 0
