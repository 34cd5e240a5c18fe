"""Environment noise models: idle, jitter, and loaded regimes.

Each regime perturbs the constant baseline B into env timings
``B * (1 + drift) + additive + structured``. Draw order within a regime is
fixed (part of the determinism contract): drift, then additive/jitter,
then structured components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Environment, SchemeParams
from .rng import DeterministicRng


@dataclass(frozen=True)
class EnvDraws:
    """Per-trace environment components, pre-leakage."""

    env_time: np.ndarray
    drift: np.ndarray
    additive: np.ndarray
    structured: np.ndarray


def env_idle(rng: DeterministicRng, params: SchemeParams, n: int) -> EnvDraws:
    """Low-contention regime: tight Gaussian drift and additive noise."""
    b = params.baseline_cycles
    drift = rng.normal(0.0, params.sigma_dvfs, n)
    noise = rng.normal(0.0, params.sigma_idle, n)
    zero = np.zeros(n)
    return EnvDraws(b * (1.0 + drift) + noise, drift, noise, zero)


def env_jitter(rng: DeterministicRng, params: SchemeParams, n: int) -> EnvDraws:
    """Block-aggregated micro-jitter with inflated drift.

    Each trace sums M per-block draws of std sigma_jitter / sqrt(M), so the
    total jitter variance stays at sigma_jitter**2 regardless of M. There is
    no separate additive idle-noise term in this regime.
    """
    b = params.baseline_cycles
    m = params.n_blocks
    drift = rng.normal(0.0, 1.5 * params.sigma_dvfs, n)
    blocks = rng.normal(0.0, params.sigma_jitter / math.sqrt(m), (n, m))
    jitter = blocks.sum(axis=1)
    zero = np.zeros(n)
    return EnvDraws(b * (1.0 + drift) + jitter, drift, jitter, zero)


def env_loaded(rng: DeterministicRng, params: SchemeParams, n: int) -> EnvDraws:
    """Contention regime: exponential queueing, sporadic interrupts, and
    noise/drift inflated by 2.5x and 2x over idle."""
    b = params.baseline_cycles
    drift = rng.normal(0.0, 2.0 * params.sigma_dvfs, n)
    noise = rng.normal(0.0, 2.5 * params.sigma_idle, n)
    queue = rng.exponential(params.queue_mean, n)
    hit = rng.bernoulli(params.interrupt_prob, n)
    length = rng.exponential(params.interrupt_mean, n)
    structured = queue + hit * length
    return EnvDraws(b * (1.0 + drift) + structured + noise, drift, noise, structured)


_REGIMES = {
    Environment.IDLE: env_idle,
    Environment.JITTER: env_jitter,
    Environment.LOADED: env_loaded,
}


def sample_environment(rng: DeterministicRng, environment: Environment,
                       params: SchemeParams, n: int) -> EnvDraws:
    return _REGIMES[environment](rng, params, n)
