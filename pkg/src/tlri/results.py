"""Results serialization: results.csv, results.json, summary.csv, traces CSVs.

All files use '.' decimals, no thousands separators, and LF line endings.
Floats are written with repr (shortest round-trip), so parsing a results
file recovers every value exactly.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from . import __version__
from .core import LeakModel, MetricReport, Scenario, TraceSet
from .sweep import SweepCurve

RESULT_COLUMNS = [
    "scheme", "env", "leak", "alpha", "n",
    "mean0", "mean1", "std0", "std1", "pooled_std",
    "welch_t", "ks_d", "cliff_delta", "mi_bits", "overlap",
    "snr", "raw", "tlri", "seed",
]

SUMMARY_COLUMNS = [
    "scheme", "env", "base_tlri", "worst_leak", "worst_tlri", "delta_tlri",
]

REPORT_FIELDS = [
    "mean_0", "mean_1", "std_0", "std_1", "pooled_std",
    "welch_t", "ks_d", "cliff_delta", "mi_bits", "overlap",
    "snr", "raw_score", "tlri",
]


def _fmt(value) -> str:
    if isinstance(value, float):
        # plain float repr even for numpy scalar subclasses
        return repr(float(value))
    return str(value)


def result_row(scenario: Scenario, report: MetricReport) -> list:
    return [
        scenario.scheme_id,
        scenario.environment.value,
        scenario.leak_model.value,
        scenario.alpha,
        scenario.n_traces,
        *[getattr(report, f) for f in REPORT_FIELDS],
        scenario.seed,
    ]


def _open_new(path: Path, force: bool):
    if path.exists() and not force:
        raise FileExistsError(f"{path} exists; pass force to overwrite")
    return open(path, "w", newline="\n")


def _write_csv(path: Path, header: list[str], rows, force: bool):
    with _open_new(path, force) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def summarize(rows: list[tuple[Scenario, MetricReport]]):
    """Per (scheme, env): baseline TLRI, argmax leak model, worst TLRI,
    delta TLRI (worst minus baseline)."""
    groups: dict[tuple[str, str], dict] = {}
    for scenario, report in rows:
        key = (scenario.scheme_id, scenario.environment.value)
        group = groups.setdefault(key, {"base": None, "worst": None})
        if scenario.leak_model is LeakModel.NONE:
            group["base"] = report.tlri
        elif group["worst"] is None or report.tlri > group["worst"][1]:
            group["worst"] = (scenario.leak_model.value, report.tlri)
    out = []
    for (scheme, env), group in groups.items():
        base = group["base"]
        worst_leak, worst = group["worst"] if group["worst"] else ("", base)
        delta = None if base is None else worst - base
        out.append([scheme, env, base, worst_leak, worst, delta])
    out.sort(key=lambda r: (r[0], r[1]))
    return out


def write_results(rows: list[tuple[Scenario, MetricReport]], out_dir: str | Path,
                  metadata: dict, force: bool = False,
                  traces: dict[str, TraceSet] | None = None) -> list[Path]:
    """Write the full results bundle; refuses to overwrite unless force."""
    if not rows:
        raise ValueError("no reports to write")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    results_csv = out_dir / "results.csv"
    _write_csv(results_csv, RESULT_COLUMNS,
               (result_row(s, r) for s, r in rows), force)
    written.append(results_csv)

    results_json = out_dir / "results.json"
    payload = {
        "metadata": {**metadata, "tool_version": __version__},
        "results": [dict(zip(RESULT_COLUMNS, result_row(s, r)))
                    for s, r in rows],
    }
    with _open_new(results_json, force) as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    written.append(results_json)

    summary_csv = out_dir / "summary.csv"
    _write_csv(summary_csv, SUMMARY_COLUMNS, summarize(rows), force)
    written.append(summary_csv)

    if traces:
        for file_id, trace_set in traces.items():
            path = out_dir / f"traces_{file_id}.csv"
            _write_csv(path, ["secret", "timing"],
                       zip(trace_set.secrets.tolist(),
                           trace_set.timings.tolist()),
                       force)
            written.append(path)
    return written


def write_sweep(curve: SweepCurve, scenario: Scenario, out_dir: str | Path,
                force: bool = False) -> Path:
    """One row per grid point: prefix_n plus every MetricReport column."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"sweep_{scenario.file_id()}.csv"
    header = ["prefix_n"] + REPORT_FIELDS + ["skip_reason"]
    rows = []
    for point in curve.points:
        if point.report is None:
            rows.append([point.prefix_n] + [""] * len(REPORT_FIELDS)
                        + [point.skip_reason])
        else:
            rows.append([point.prefix_n]
                        + [getattr(point.report, f) for f in REPORT_FIELDS]
                        + [""])
    _write_csv(path, header, rows, force)
    return path


def read_results_csv(path: str | Path) -> list[dict]:
    """Parse results.csv back into typed dicts (used by the CLI tables so
    console output always derives from the written file)."""
    out = []
    with open(path, newline="") as fh:
        for record in csv.DictReader(fh):
            parsed = dict(record)
            for key in ("alpha", *RESULT_COLUMNS[5:18]):
                parsed[key] = float(parsed[key])
            parsed["n"] = int(parsed["n"])
            parsed["seed"] = int(parsed["seed"])
            out.append(parsed)
    return out
