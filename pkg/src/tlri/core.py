"""Shared domain types: scenarios, scheme parameters, trace sets, metric reports.

Everything in here is a plain value type. Instances are immutable after
construction and safe to share across worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class ParameterError(ValueError):
    """A sampler or model parameter is outside its legal range."""


class InsufficientDataError(ValueError):
    """A metric was asked to run on a class with too few traces."""


class ConfigError(ValueError):
    """A configuration file failed to parse or validate."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class Environment(str, Enum):
    IDLE = "idle"
    JITTER = "jitter"
    LOADED = "loaded"


class LeakModel(str, Enum):
    NONE = "none"
    BRANCH = "branch"
    MEMCMP_EARLY = "memcmp_early"
    DIV_LATENCY = "div_latency"
    CACHE_INDEX = "cache_index"
    BIG_BRANCH = "big_branch"


_UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class Scenario:
    """One experimental unit: scheme x environment x leak model x strength.

    ``seed`` is the per-scenario stream seed (already derived from the
    master seed, see :mod:`tlri.rng`), so a Scenario alone regenerates its
    traces bit-identically.
    """

    scheme_id: str
    environment: Environment
    leak_model: LeakModel
    alpha: float
    n_traces: int
    seed: int

    def __post_init__(self):
        if self.alpha < 0:
            raise ParameterError(f"alpha must be >= 0, got {self.alpha}")
        if self.n_traces < 2:
            raise ParameterError(f"n_traces must be >= 2, got {self.n_traces}")
        if not (0 <= self.seed <= _UINT64_MAX):
            raise ParameterError(f"seed must fit in 64 bits, got {self.seed}")

    @property
    def effective_alpha(self) -> float:
        """Leak strength actually applied; forced to 0 when there is no leak."""
        return 0.0 if self.leak_model is LeakModel.NONE else self.alpha

    def label(self) -> str:
        return (
            f"{self.scheme_id}/{self.environment.value}/"
            f"{self.leak_model.value}/{self.alpha:g}"
        )

    def file_id(self) -> str:
        return (
            f"{self.scheme_id}_{self.environment.value}_"
            f"{self.leak_model.value}_a{self.alpha:g}".replace(".", "p")
        )


@dataclass(frozen=True)
class SchemeParams:
    """Baseline cycle scale plus every noise/leak shape parameter of a scheme.

    All cycle-valued fields are real cycles; sigma_dvfs is a dimensionless
    relative drift. ``memcmp_delta`` defaults to 0.6 * branch_delta when not
    given (early-exit comparisons are modeled as a weaker signed shift).
    """

    baseline_cycles: float
    sigma_dvfs: float
    sigma_idle: float
    sigma_jitter: float
    n_blocks: int
    queue_mean: float
    interrupt_prob: float
    interrupt_mean: float
    branch_delta: float
    big_branch_delta: float
    div_opportunities: int
    div_base_rate: float
    div_cost: float
    cache_accesses: int
    cache_base_miss: float
    cache_miss_shift: float
    cache_penalty: float
    memcmp_delta: float | None = None
    large_baseline: bool = False

    def __post_init__(self):
        problems = self.validation_problems()
        if problems:
            raise ParameterError("; ".join(problems))

    def validation_problems(self) -> list[str]:
        """Collect every violated invariant (not just the first)."""
        p = []
        # sigma terms may be exactly zero (noise-free degenerate models)
        for name in ("sigma_dvfs", "sigma_idle", "sigma_jitter"):
            if getattr(self, name) < 0:
                p.append(f"{name} must be >= 0, got {getattr(self, name)}")
        positive = [
            ("baseline_cycles", self.baseline_cycles),
            ("queue_mean", self.queue_mean),
            ("interrupt_mean", self.interrupt_mean),
            ("branch_delta", self.branch_delta),
            ("big_branch_delta", self.big_branch_delta),
            ("div_cost", self.div_cost),
            ("cache_penalty", self.cache_penalty),
        ]
        for name, value in positive:
            if not value > 0:
                p.append(f"{name} must be > 0, got {value}")
        if self.memcmp_delta is not None and not self.memcmp_delta > 0:
            p.append(f"memcmp_delta must be > 0, got {self.memcmp_delta}")
        if self.n_blocks < 1:
            p.append(f"n_blocks must be >= 1, got {self.n_blocks}")
        if self.div_opportunities < 1:
            p.append(f"div_opportunities must be >= 1, got {self.div_opportunities}")
        if self.cache_accesses < 1:
            p.append(f"cache_accesses must be >= 1, got {self.cache_accesses}")
        if not 0 <= self.interrupt_prob <= 1:
            p.append(f"interrupt_prob must be in [0,1], got {self.interrupt_prob}")
        if not 0 < self.div_base_rate < 1:
            p.append(f"div_base_rate must be in (0,1), got {self.div_base_rate}")
        if not 0 < self.cache_base_miss < 1:
            p.append(f"cache_base_miss must be in (0,1), got {self.cache_base_miss}")
        if not 0 < self.cache_miss_shift < 1:
            p.append(f"cache_miss_shift must be in (0,1), got {self.cache_miss_shift}")
        return p

    @property
    def memcmp_delta_effective(self) -> float:
        return self.memcmp_delta if self.memcmp_delta is not None else 0.6 * self.branch_delta


@dataclass(frozen=True)
class TraceSet:
    """Paired secret labels and observed timings for one scenario."""

    secrets: np.ndarray
    timings: np.ndarray

    def __post_init__(self):
        secrets = np.asarray(self.secrets)
        timings = np.asarray(self.timings, dtype=np.float64)
        if secrets.shape != timings.shape or secrets.ndim != 1:
            raise ParameterError(
                f"secrets and timings must be equal-length 1-D arrays, got "
                f"{secrets.shape} vs {timings.shape}"
            )
        if secrets.size and not np.isin(secrets, (0, 1)).all():
            raise ParameterError("secret labels must be 0 or 1")
        object.__setattr__(self, "secrets", secrets.astype(np.int8))
        object.__setattr__(self, "timings", timings)

    def __len__(self) -> int:
        return self.secrets.size


def partition(traces: TraceSet) -> tuple[np.ndarray, np.ndarray]:
    """Split timings into the class-0 and class-1 samples, order preserved.

    Empty classes are legal here; metrics reject them at their own entry.
    """
    mask = traces.secrets == 1
    return traces.timings[~mask], traces.timings[mask]


@dataclass(frozen=True)
class MetricReport:
    """Per-scenario bundle of every distinguishability statistic and the score."""

    mean_0: float
    mean_1: float
    std_0: float
    std_1: float
    pooled_std: float
    welch_t: float
    ks_d: float
    cliff_delta: float
    mi_bits: float
    overlap: float
    snr: float
    raw_score: float
    tlri: float
    degenerate: bool = field(default=False, compare=False)
