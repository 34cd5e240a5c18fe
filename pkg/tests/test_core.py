import numpy as np
import pytest
from hypothesis import given, strategies as st

from tlri.core import (
    LeakModel,
    ParameterError,
    Scenario,
    SchemeParams,
    TraceSet,
    partition,
)
from tlri.leakage import generate_traces

from conftest import make_scenario


def test_partition_direct_filter():
    traces = TraceSet(secrets=np.array([0, 1, 0]), timings=np.array([5.0, 9.0, 6.0]))
    s0, s1 = partition(traces)
    assert s0.tolist() == [5.0, 6.0]
    assert s1.tolist() == [9.0]


def test_partition_degenerate_class():
    traces = TraceSet(secrets=np.zeros(4, dtype=int), timings=np.arange(4.0))
    s0, s1 = partition(traces)
    assert s0.tolist() == [0.0, 1.0, 2.0, 3.0]
    assert s1.size == 0


def test_partition_balanced_bernoulli_counts():
    # regenerate with the fixed scenario seed and count: frozen expectation
    scenario = make_scenario(leak="none", alpha=0.0, n=10_000)
    traces = generate_traces(scenario, _params())
    s0, s1 = partition(traces)
    assert s0.size + s1.size == 10_000
    # counts are deterministic for this seed; balanced within ~3 sigma
    assert abs(s0.size - s1.size) < 3 * 100
    regen = generate_traces(scenario, _params())
    r0, r1 = partition(regen)
    assert r0.size == s0.size and r1.size == s1.size


@given(st.lists(st.tuples(st.integers(0, 1), st.floats(0, 1e6)), min_size=1, max_size=200))
def test_partition_is_permutation_stable_split(pairs):
    secrets = np.array([p[0] for p in pairs])
    timings = np.array([p[1] for p in pairs])
    s0, s1 = partition(TraceSet(secrets=secrets, timings=timings))
    assert sorted(np.concatenate([s0, s1]).tolist()) == sorted(timings.tolist())


def _params(**overrides):
    base = dict(
        baseline_cycles=50_000, sigma_dvfs=0.003, sigma_idle=200,
        sigma_jitter=600, n_blocks=64, queue_mean=500, interrupt_prob=0.05,
        interrupt_mean=10_000, branch_delta=130, big_branch_delta=800,
        div_opportunities=64, div_base_rate=0.10, div_cost=15,
        cache_accesses=128, cache_base_miss=0.08, cache_miss_shift=0.04,
        cache_penalty=32,
    )
    base.update(overrides)
    return SchemeParams(**base)


def test_scenario_rejects_negative_alpha():
    with pytest.raises(ParameterError):
        make_scenario(alpha=-0.1)


def test_scenario_rejects_tiny_trace_count():
    with pytest.raises(ParameterError):
        make_scenario(n=1)


def test_effective_alpha_zero_for_no_leak():
    scenario = make_scenario(leak="none", alpha=2.0)
    assert scenario.leak_model is LeakModel.NONE
    assert scenario.effective_alpha == 0.0


def test_scheme_params_collects_all_violations():
    with pytest.raises(ParameterError) as err:
        _params(interrupt_prob=1.3, div_base_rate=0.0, cache_penalty=-5)
    message = str(err.value)
    assert "interrupt_prob" in message
    assert "div_base_rate" in message
    assert "cache_penalty" in message


def test_scheme_params_allows_zero_sigma():
    params = _params(sigma_dvfs=0.0, sigma_idle=0.0, sigma_jitter=0.0)
    assert params.sigma_idle == 0.0


def test_memcmp_delta_defaults_to_scaled_branch():
    assert _params().memcmp_delta_effective == pytest.approx(0.6 * 130)
    assert _params(memcmp_delta=50).memcmp_delta_effective == 50


def test_traceset_rejects_mismatched_lengths():
    with pytest.raises(ParameterError):
        TraceSet(secrets=np.array([0, 1]), timings=np.array([1.0]))


def test_traceset_rejects_bad_labels():
    with pytest.raises(ParameterError):
        TraceSet(secrets=np.array([0, 2]), timings=np.array([1.0, 2.0]))
