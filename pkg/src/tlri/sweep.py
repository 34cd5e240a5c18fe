"""Sample-size stability analysis over shuffled prefixes of a trace set.

One deterministic shuffle (under shuffle_seed), then the full metric
pipeline is recomputed on each growing prefix: evidence-accumulation
semantics, not a re-shuffle per point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigError, InsufficientDataError, MetricReport, TraceSet
from .metrics import DEFAULT_BINS, full_report
from .scoring import TlriWeights

#: Smallest prefix worth evaluating: keeps both classes comfortably above
#: the metric minimum under Bernoulli(0.5) labels. Configurable per grid.
MIN_PREFIX = 200

DEFAULT_GRID_POINTS = 12


@dataclass(frozen=True)
class SweepPoint:
    prefix_n: int
    report: MetricReport | None
    skip_reason: str | None = None


@dataclass(frozen=True)
class SweepCurve:
    points: tuple[SweepPoint, ...]
    shuffle_seed: int


def default_grid(n: int, points: int = DEFAULT_GRID_POINTS,
                 minimum: int = MIN_PREFIX) -> list[int]:
    """Log-spaced integer grid from max(minimum, n // 100) up to n."""
    lo = max(minimum, n // 100)
    if lo >= n:
        return [n]
    raw = np.geomspace(lo, n, points)
    grid = sorted({int(round(v)) for v in raw})
    grid[-1] = n
    return grid


def run_sweep(traces: TraceSet, grid: list[int], shuffle_seed: int,
              bins: int = DEFAULT_BINS,
              weights: TlriWeights | None = None) -> SweepCurve:
    """Shuffle once, then produce a MetricReport per prefix size.

    A prefix whose smaller class has fewer than 2 traces yields a skipped
    point with a recorded reason instead of a report.
    """
    n = len(traces)
    if not grid:
        raise ConfigError("sweep grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError(f"sweep grid must be strictly increasing: {grid}")
    if grid[0] < 2:
        raise ConfigError(f"sweep grid minimum must be >= 2: {grid}")
    if grid[-1] > n:
        raise ConfigError(f"sweep grid exceeds trace count {n}: {grid}")

    perm = np.random.Generator(np.random.PCG64(shuffle_seed)).permutation(n)
    secrets = traces.secrets[perm]
    timings = traces.timings[perm]

    points = []
    for prefix_n in grid:
        prefix = TraceSet(secrets=secrets[:prefix_n], timings=timings[:prefix_n])
        try:
            report = full_report(prefix, bins=bins, weights=weights)
        except InsufficientDataError as exc:
            points.append(SweepPoint(prefix_n, None, skip_reason=str(exc)))
        else:
            points.append(SweepPoint(prefix_n, report))
    return SweepCurve(points=tuple(points), shuffle_seed=shuffle_seed)
