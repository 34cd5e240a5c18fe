"""Secret-dependent leakage injection.

Leakage is added after environment noise as an additive per-trace term,
then the final timing is clipped at zero (clipping on by default). Two
operator families: symmetric signed shifts (branch / memcmp_early /
big_branch) and binomial event accumulation (div_latency / cache_index).
"""

from __future__ import annotations

import warnings

import numpy as np

from .core import ConfigError, LeakModel, Scenario, SchemeParams, TraceSet
from .environment import EnvDraws
from .rng import DeterministicRng


def resolve_leak_model(leak_model: LeakModel, params: SchemeParams) -> LeakModel:
    """Schemes flagged large_baseline trade the plain branch shift for the
    large-penalty variant; every other model passes through unchanged."""
    if leak_model is LeakModel.BRANCH and params.large_baseline:
        return LeakModel.BIG_BRANCH
    return leak_model


def leak_signed_shift(secrets: np.ndarray, alpha: float,
                      delta_cycles: float) -> np.ndarray:
    """+alpha*delta for class 1, -alpha*delta for class 0."""
    shift = alpha * delta_cycles
    return np.where(secrets == 1, shift, -shift)


def _clamped_rate(value: float, name: str, scenario_label: str) -> float:
    if value > 1.0 or value < 0.0:
        warnings.warn(
            f"{scenario_label}: {name}={value:.4f} clamped into [0,1]",
            stacklevel=3,
        )
    return min(1.0, max(0.0, value))


def leak_div_latency(rng: DeterministicRng, secrets: np.ndarray, alpha: float,
                     params: SchemeParams, scenario_label: str = "") -> np.ndarray:
    """Accumulation of slow division events.

    Event counts are Binomial(L, rho(s)) with rho(1) = rho0*(1 + 0.6*alpha)
    and rho(0) = rho0*(1 - 0.3*alpha), both clamped into [0,1]. Each trace
    pays count * (alpha*c + eta) with one eta ~ N(0, 0.25*alpha*c) per trace.
    At alpha=0 the per-event cost is exactly zero, so the model degenerates
    cleanly to no leakage.
    """
    rho1 = _clamped_rate(params.div_base_rate * (1.0 + 0.6 * alpha),
                         "div rate rho(1)", scenario_label)
    rho0 = _clamped_rate(params.div_base_rate * (1.0 - 0.3 * alpha),
                         "div rate rho(0)", scenario_label)
    rates = np.where(secrets == 1, rho1, rho0)
    events = rng.binomial(params.div_opportunities, rates)
    cost = alpha * params.div_cost
    eta = rng.normal(0.0, 0.25 * cost, secrets.size)
    return events * (cost + eta)


def leak_cache_index(rng: DeterministicRng, secrets: np.ndarray, alpha: float,
                     params: SchemeParams, scenario_label: str = "") -> np.ndarray:
    """Secret-dependent cache miss frequency.

    Miss counts are Binomial(L', pi(s)) with pi(1) = pi0 + alpha*dpi clamped
    to <= 1 and pi(0) = max(0, pi0 - alpha*dpi); each miss costs P + xi with
    one xi ~ N(0, 0.15*P) per trace.
    """
    pi1 = _clamped_rate(params.cache_base_miss + alpha * params.cache_miss_shift,
                        "cache miss pi(1)", scenario_label)
    pi0 = max(0.0, params.cache_base_miss - alpha * params.cache_miss_shift)
    rates = np.where(secrets == 1, pi1, pi0)
    misses = rng.binomial(params.cache_accesses, rates)
    xi = rng.normal(0.0, 0.15 * params.cache_penalty, secrets.size)
    return misses * (params.cache_penalty + xi)


def leak_delta(rng: DeterministicRng, secrets: np.ndarray, scenario: Scenario,
               params: SchemeParams) -> np.ndarray:
    """Dispatch to the scenario's (resolved) leakage operator."""
    model = resolve_leak_model(scenario.leak_model, params)
    alpha = scenario.effective_alpha
    label = scenario.label()
    if model is LeakModel.NONE:
        return np.zeros(secrets.size)
    if model is LeakModel.BRANCH:
        return leak_signed_shift(secrets, alpha, params.branch_delta)
    if model is LeakModel.MEMCMP_EARLY:
        return leak_signed_shift(secrets, alpha, params.memcmp_delta_effective)
    if model is LeakModel.BIG_BRANCH:
        return leak_signed_shift(secrets, alpha, params.big_branch_delta)
    if model is LeakModel.DIV_LATENCY:
        return leak_div_latency(rng, secrets, alpha, params, label)
    if model is LeakModel.CACHE_INDEX:
        return leak_cache_index(rng, secrets, alpha, params, label)
    raise ConfigError(f"unknown leak model: {scenario.leak_model}")


def inject(env: EnvDraws, secrets: np.ndarray, scenario: Scenario,
           params: SchemeParams, rng: DeterministicRng,
           clipping: bool = True) -> TraceSet:
    """Add the secret-dependent term to env timings and clip at zero.

    With leak_model none the output timings equal the env timings exactly
    (modulo the same clipping step).
    """
    if scenario.leak_model is LeakModel.NONE:
        timings = env.env_time.copy()
    else:
        timings = env.env_time + leak_delta(rng, secrets, scenario, params)
    if clipping:
        timings = np.maximum(timings, 0.0)
    return TraceSet(secrets=secrets, timings=timings)


def generate_traces(scenario: Scenario, params: SchemeParams,
                    clipping: bool = True, warmup: int = 0) -> TraceSet:
    """Full trace synthesis for one scenario from its own seed.

    Draw order (fixed): secrets, environment, leakage. A pure function of
    (scenario, params, clipping, warmup); regeneration is bit-identical.
    """
    from .environment import sample_environment

    rng = DeterministicRng(scenario.seed, warmup=warmup)
    secrets = rng.bernoulli(0.5, scenario.n_traces)
    env = sample_environment(rng, scenario.environment, params, scenario.n_traces)
    return inject(env, secrets, scenario, params, rng, clipping=clipping)
