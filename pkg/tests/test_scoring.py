import math

import pytest
from hypothesis import given, settings, strategies as st

from tlri.scoring import SNR_CAP, TlriWeights, mi_scaled, snr_proxy, tlri_score


# ------------------------------------------------------------------- snr

def test_snr_equal_means_zero():
    assert snr_proxy(100.0, 100.0, 40.0) == (0.0, False)


def test_snr_direct_ratio():
    snr, degenerate = snr_proxy(100.0, 180.0, 40.0)
    assert snr == 2.0 and not degenerate


def test_snr_degenerate_sentinel():
    assert snr_proxy(5.0, 5.0, 0.0) == (0.0, False)
    snr, degenerate = snr_proxy(5.0, 6.0, 0.0)
    assert snr == SNR_CAP and degenerate


def test_snr_matches_analytic_gap_over_pooled_std(kyber):
    # branch leak: expected gap 2 * alpha * delta; snr should track it
    from tlri.leakage import generate_traces
    from tlri.metrics import full_report
    from conftest import make_scenario

    scenario = make_scenario(leak="branch", alpha=1.0, n=20_000)
    report = full_report(generate_traces(scenario, kyber))
    expected = 2 * kyber.branch_delta / report.pooled_std
    assert report.snr == pytest.approx(expected, rel=0.05)


# -------------------------------------------------------------------- mi

def test_mi_scaled_examples():
    assert mi_scaled(0.0) == 0.0
    assert mi_scaled(0.25, 0.5) == 0.5
    assert mi_scaled(0.9, 0.5) == 1.0


def test_mi_scaled_rejects_negative():
    with pytest.raises(ValueError):
        mi_scaled(-0.1)


# ------------------------------------------------------------------ tlri

def test_zero_evidence_tlri_to_machine_precision():
    raw, tlri = tlri_score(0.0, 0.0, 0.0, 1.0, 0.0)
    assert raw == 0.0
    assert tlri == 1.0 / (1.0 + math.exp(1.5))
    assert tlri == pytest.approx(0.18242552, abs=1e-8)


def test_logistic_midpoint():
    # choose components so raw lands exactly on the shift
    raw, tlri = tlri_score(1.5 / 0.9, 0.0, 0.0, 1.0, 0.0)
    assert raw == pytest.approx(1.5, abs=1e-12)
    assert tlri == pytest.approx(0.5, abs=1e-12)


def test_worked_fusion_example():
    # SNR=2, D=0.407, |delta|=0.548, overlap=0.6, scaled MI=0.363
    raw, tlri = tlri_score(2.0, 0.407, 0.548, 0.6, 0.363 * 0.5)
    expected_raw = 0.9 * 2 + 1.3 * 0.407 + 1.1 * 0.548 + 1.2 * 0.4 + 0.9 * 0.363
    assert raw == pytest.approx(expected_raw, abs=1e-12)
    assert expected_raw == pytest.approx(3.7386, abs=1e-10)
    assert tlri == pytest.approx(1.0 / (1.0 + math.exp(-(expected_raw - 1.5))),
                                 abs=1e-12)
    assert tlri == pytest.approx(0.904, abs=5e-4)


def test_negative_cliff_contributes_by_magnitude():
    _, up = tlri_score(0.0, 0.0, 0.5, 1.0, 0.0)
    _, down = tlri_score(0.0, 0.0, -0.5, 1.0, 0.0)
    assert up == down


bounded = st.floats(0.0, 1.0)


@given(st.floats(0.0, 10.0), bounded, st.floats(-1.0, 1.0), bounded,
       st.floats(0.0, 1.0))
@settings(max_examples=100)
def test_tlri_in_open_unit_interval(snr, ks, cliff, overlap, mi):
    raw, tlri = tlri_score(snr, ks, cliff, overlap, mi)
    assert 0.0 < tlri < 1.0
    assert math.isfinite(raw)


@given(st.floats(0.0, 10.0), bounded, bounded, bounded, st.floats(0.0, 1.0),
       st.floats(0.001, 5.0))
@settings(max_examples=100)
def test_tlri_monotone_in_each_component(snr, ks, cliff, overlap, mi, bump):
    base = tlri_score(snr, ks, cliff, overlap, mi)[1]
    assert tlri_score(snr + bump, ks, cliff, overlap, mi)[1] >= base
    assert tlri_score(snr, min(1, ks + bump), cliff, overlap, mi)[1] >= base
    assert tlri_score(snr, ks, min(1, cliff + bump), overlap, mi)[1] >= base
    assert tlri_score(snr, ks, cliff, max(0, overlap - bump), mi)[1] >= base
    assert tlri_score(snr, ks, cliff, overlap, mi + bump)[1] >= base


def test_ranking_invariance_under_timing_rescale(kyber):
    # all fused components are scale-free, so rescaling timings by a
    # positive constant leaves TLRI unchanged
    import numpy as np

    from tlri.core import TraceSet
    from tlri.leakage import generate_traces
    from tlri.metrics import full_report
    from conftest import make_scenario

    traces = generate_traces(make_scenario(leak="cache_index", n=5_000), kyber)
    scaled = TraceSet(secrets=traces.secrets, timings=traces.timings * 3.5)
    a = full_report(traces)
    b = full_report(scaled)
    assert b.tlri == pytest.approx(a.tlri, abs=1e-9)


# --------------------------------------------------------------- weights

def test_weights_defaults_frozen():
    w = TlriWeights()
    assert w.as_dict() == {
        "w_snr": 0.9, "w_ks": 1.3, "w_cliff": 1.1, "w_sep": 1.2,
        "w_mi": 0.9, "mi_cap": 0.5, "logistic_shift": 1.5,
    }


def test_weights_reject_negative():
    with pytest.raises(ValueError):
        TlriWeights(w_ks=-0.1)
    with pytest.raises(ValueError):
        TlriWeights(mi_cap=0.0)
