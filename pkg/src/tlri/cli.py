"""Command-line entry point: matrix runs, sweeps, and config validation."""

from __future__ import annotations

import argparse
import fnmatch
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import default_config_path, load_matrix
from .core import ConfigError
from .leakage import generate_traces
from .results import read_results_csv, write_results, write_sweep
from .rng import GENERATOR_NAME
from .runner import run_matrix
from .sweep import default_grid, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_PARTIAL = 3


def _default_out() -> str:
    return os.environ.get("TLRI_OUT_DIR", "./tlri_out")


def _add_common(parser):
    parser.add_argument("--config", default=None,
                        help="matrix config file (default: bundled paper_matrix)")
    parser.add_argument("--out", default=None,
                        help=f"output directory (default: $TLRI_OUT_DIR or {_default_out()})")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the config master seed")
    parser.add_argument("--force", action="store_true",
                        help="overwrite existing output files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tlri",
        description="Timing side-channel leakage simulator and TLRI risk scoring.",
    )
    parser.add_argument(
        "--version", action="version",
        version=f"tlri {__version__} (rng={GENERATOR_NAME}, numpy={np.__version__})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute the full scenario matrix")
    _add_common(p_run)
    p_run.add_argument("--parallelism", type=int, default=1,
                       help="scenario-level worker processes")
    p_run.add_argument("--emit-traces", action="store_true",
                       help="also write per-scenario traces_<id>.csv files")
    p_run.add_argument("--top", type=int, default=15,
                       help="rows in the ranked console table")

    p_sweep = sub.add_parser("sweep", help="sample-size stability sweep for one scenario")
    _add_common(p_sweep)
    p_sweep.add_argument("--scenario", required=True,
                         help="selector scheme/env/leak/alpha ('*' wildcards allowed)")
    p_sweep.add_argument("--grid", default=None,
                         help="grid spec min:max:logK | min:max:linK | n1,n2,...")
    p_sweep.add_argument("--shuffle-seed", type=int, default=0)

    p_val = sub.add_parser("validate", help="validate a config and list its scenarios")
    p_val.add_argument("--config", default=None)
    return parser


def _load(config_arg):
    path = Path(config_arg) if config_arg else default_config_path()
    return load_matrix(path), path


def _run_metadata(matrix, master_seed):
    # worker count is deliberately not recorded: result files must be
    # identical for any parallelism level
    return {
        "generator": GENERATOR_NAME,
        "numpy_version": np.__version__,
        "master_seed": master_seed,
        "n_traces": matrix.n_traces,
        "bins": matrix.bins,
        "clipping": matrix.clipping,
        "warmup": matrix.warmup,
        "alphas": matrix.alphas,
        "environments": [e.value for e in matrix.environments],
        "leak_models": [m.value for m in matrix.leak_models],
        "weights": matrix.weights.as_dict(),
        "sweep": {"points": matrix.sweep.points, "min_n": matrix.sweep.min_n},
    }


def _print_top_table(results_csv: Path, top: int):
    """Ranked table read back from the written file, never recomputed."""
    rows = read_results_csv(results_csv)
    ranked = sorted((r for r in rows if r["leak"] != "none"),
                    key=lambda r: -r["tlri"])[:top]
    header = f"{'scheme':<8} {'env':<7} {'leak':<13} {'alpha':>6} " \
             f"{'tlri':>7} {'ks_d':>7} {'|delta|':>8} {'mi_bits':>8}"
    print(header)
    print("-" * len(header))
    for r in ranked:
        print(f"{r['scheme']:<8} {r['env']:<7} {r['leak']:<13} "
              f"{r['alpha']:>6.3g} {r['tlri']:>7.3f} {r['ks_d']:>7.3f} "
              f"{abs(r['cliff_delta']):>8.3f} {r['mi_bits']:>8.4f}")


def cmd_run(args) -> int:
    matrix, _ = _load(args.config)
    master_seed = args.seed if args.seed is not None else matrix.master_seed
    out_dir = Path(args.out or _default_out())
    run = run_matrix(matrix, master_seed=master_seed,
                     parallelism=max(1, args.parallelism),
                     emit_traces=args.emit_traces)
    if not run.rows:
        print("all scenarios failed", file=sys.stderr)
        return EXIT_RUNTIME
    metadata = _run_metadata(matrix, master_seed)
    written = write_results(run.rows, out_dir, metadata, force=args.force,
                            traces=run.traces)
    print(f"{len(run.rows)} scenarios -> {out_dir}")
    _print_top_table(written[0], args.top)
    if run.failures:
        print(f"\n{len(run.failures)} scenario(s) failed:", file=sys.stderr)
        for scenario, error in run.failures:
            print(f"  {scenario.label()}: {error}", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def _match_scenarios(matrix, master_seed, selector: str):
    parts = selector.split("/")
    if len(parts) != 4:
        raise ConfigError(f"selector must be scheme/env/leak/alpha, got '{selector}'")
    matches = []
    for scenario, params in matrix.expand(master_seed):
        fields = [scenario.scheme_id, scenario.environment.value,
                  scenario.leak_model.value, f"{scenario.alpha:g}"]
        if all(fnmatch.fnmatch(f, pat) for f, pat in zip(fields, parts)):
            matches.append((scenario, params))
    return matches


def _parse_grid(spec: str | None, n: int, matrix):
    if spec is None:
        return default_grid(n, matrix.sweep.points, matrix.sweep.min_n)
    if "," in spec or ":" not in spec:
        return [int(v) for v in spec.split(",")]
    lo, hi, kind = spec.split(":")
    lo, hi = int(lo), int(hi)
    if kind.startswith("log"):
        points = int(kind[3:])
        grid = sorted({int(round(v)) for v in np.geomspace(lo, hi, points)})
        grid[-1] = hi
        return grid
    if kind.startswith("lin"):
        points = int(kind[3:])
        return sorted({int(round(v)) for v in np.linspace(lo, hi, points)})
    raise ConfigError(f"bad grid spec '{spec}'")


def cmd_sweep(args) -> int:
    matrix, _ = _load(args.config)
    master_seed = args.seed if args.seed is not None else matrix.master_seed
    matches = _match_scenarios(matrix, master_seed, args.scenario)
    if len(matches) != 1:
        print(f"selector '{args.scenario}' matched {len(matches)} scenarios:",
              file=sys.stderr)
        for scenario, _ in matches:
            print(f"  {scenario.label()}", file=sys.stderr)
        return EXIT_CONFIG
    scenario, params = matches[0]
    traces = generate_traces(scenario, params, clipping=matrix.clipping,
                             warmup=matrix.warmup)
    grid = _parse_grid(args.grid, scenario.n_traces, matrix)
    curve = run_sweep(traces, grid, args.shuffle_seed, bins=matrix.bins,
                      weights=matrix.weights)
    out_dir = Path(args.out or _default_out())
    path = write_sweep(curve, scenario, out_dir, force=args.force)
    print(f"{scenario.label()} -> {path} ({len(curve.points)} grid points)")
    return EXIT_OK


def cmd_validate(args) -> int:
    matrix, path = _load(args.config)
    expanded = matrix.expand()
    print(f"{path}: OK ({len(expanded)} scenarios)")
    for scenario, _ in expanded:
        print(f"  {scenario.label()}  seed={scenario.seed}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"run": cmd_run, "sweep": cmd_sweep, "validate": cmd_validate}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print("config error:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  {problem}", file=sys.stderr)
        return EXIT_CONFIG
    except FileExistsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
