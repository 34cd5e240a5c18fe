"""Matrix execution: generation -> metrics -> TLRI for every scenario.

Scenarios fan out across processes when parallelism > 1. Each scenario is
a pure function of (scenario, params, settings), so the result files are
identical for any worker count; assembly is order-stable by scenario key.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .config import ScenarioMatrix
from .core import InsufficientDataError, MetricReport, Scenario, SchemeParams, TraceSet
from .leakage import generate_traces
from .metrics import DEFAULT_BINS, full_report
from .scoring import TlriWeights


@dataclass(frozen=True)
class RunSettings:
    bins: int = DEFAULT_BINS
    weights: TlriWeights = field(default_factory=TlriWeights)
    clipping: bool = True
    warmup: int = 0


def scenario_sort_key(scenario: Scenario):
    return (scenario.scheme_id, scenario.environment.value,
            scenario.leak_model.value, scenario.alpha)


def run_scenario(scenario: Scenario, params: SchemeParams,
                 settings: RunSettings) -> tuple[TraceSet, MetricReport]:
    traces = generate_traces(scenario, params, clipping=settings.clipping,
                             warmup=settings.warmup)
    report = full_report(traces, bins=settings.bins, weights=settings.weights)
    return traces, report


def _worker(job):
    scenario, params, settings, keep_traces = job
    try:
        traces, report = run_scenario(scenario, params, settings)
    except InsufficientDataError as exc:
        return scenario, None, None, str(exc)
    return scenario, report, traces if keep_traces else None, None


@dataclass
class MatrixRun:
    rows: list[tuple[Scenario, MetricReport]]
    traces: dict[str, TraceSet]
    failures: list[tuple[Scenario, str]]


def run_matrix(matrix: ScenarioMatrix, master_seed: int | None = None,
               parallelism: int = 1, emit_traces: bool = False) -> MatrixRun:
    settings = RunSettings(bins=matrix.bins, weights=matrix.weights,
                           clipping=matrix.clipping, warmup=matrix.warmup)
    jobs = [(scenario, params, settings, emit_traces)
            for scenario, params in matrix.expand(master_seed)]

    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            outcomes = list(pool.map(_worker, jobs, chunksize=1))
    else:
        outcomes = [_worker(job) for job in jobs]

    outcomes.sort(key=lambda o: scenario_sort_key(o[0]))
    rows, traces, failures = [], {}, []
    for scenario, report, trace_set, error in outcomes:
        if error is not None:
            failures.append((scenario, error))
            continue
        rows.append((scenario, report))
        if trace_set is not None:
            traces[scenario.file_id()] = trace_set
    return MatrixRun(rows=rows, traces=traces, failures=failures)
