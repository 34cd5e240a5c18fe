"""Scenario-matrix configuration: YAML loading, validation, and expansion.

The config file is the contract between the engine, the CLI, and the plot
component. Validation collects every violation before raising, and unknown
keys are rejected by name so typos never silently fall back to defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields as dc_fields
from importlib import resources
from pathlib import Path

import yaml

from .core import ConfigError, Environment, LeakModel, Scenario, SchemeParams
from .metrics import DEFAULT_BINS
from .rng import derive_scenario_seed
from .scoring import TlriWeights
from .sweep import DEFAULT_GRID_POINTS, MIN_PREFIX

DEFAULT_ALPHAS = [1.0]
DEFAULT_LEAK_MODELS = ["branch", "memcmp_early", "div_latency", "cache_index"]
DEFAULT_ENVIRONMENTS = ["idle", "jitter", "loaded"]

_MATRIX_KEYS = {
    "master_seed", "n_traces", "bins", "clipping", "warmup", "alphas",
    "environments", "leak_models", "weights", "sweep", "schemes",
}
_SCHEME_KEYS = {f.name for f in dc_fields(SchemeParams)}
_WEIGHT_KEYS = {f.name for f in dc_fields(TlriWeights)}
_SWEEP_KEYS = {"points", "min_n"}


@dataclass(frozen=True)
class SweepSettings:
    points: int = DEFAULT_GRID_POINTS
    min_n: int = MIN_PREFIX


@dataclass(frozen=True)
class ScenarioMatrix:
    """Validated run set. The Cartesian product of schemes, environments,
    leak models, and alphas, with a leak-free baseline row always included
    per (scheme, environment)."""

    schemes: dict[str, SchemeParams]
    environments: list[Environment]
    leak_models: list[LeakModel]
    alphas: list[float]
    n_traces: int
    master_seed: int
    bins: int = DEFAULT_BINS
    clipping: bool = True
    warmup: int = 0
    weights: TlriWeights = field(default_factory=TlriWeights)
    sweep: SweepSettings = field(default_factory=SweepSettings)

    def expand(self, master_seed: int | None = None
               ) -> list[tuple[Scenario, SchemeParams]]:
        """Full scenario list, baseline (leak none, alpha 0) rows first per
        (scheme, environment) pair. Per-scenario seeds are derived here."""
        seed = self.master_seed if master_seed is None else master_seed
        out = []
        for scheme_id, params in self.schemes.items():
            for env in self.environments:
                combos = [(LeakModel.NONE, 0.0)]
                combos += [(leak, alpha) for leak in self.leak_models
                           for alpha in self.alphas]
                for leak, alpha in combos:
                    scenario_seed = derive_scenario_seed(
                        seed, scheme_id, env.value, leak.value, alpha)
                    out.append((
                        Scenario(
                            scheme_id=scheme_id,
                            environment=env,
                            leak_model=leak,
                            alpha=alpha,
                            n_traces=self.n_traces,
                            seed=scenario_seed,
                        ),
                        params,
                    ))
        return out


def _check_unknown(mapping: dict, allowed: set, where: str, problems: list):
    for key in mapping:
        if key not in allowed:
            problems.append(f"unknown key '{key}' in {where}")


def _parse_enum(values, enum_cls, what, problems):
    out = []
    for v in values:
        try:
            out.append(enum_cls(v))
        except ValueError:
            valid = ", ".join(e.value for e in enum_cls)
            problems.append(f"invalid {what} '{v}' (valid: {valid})")
    return out


def load_matrix(path: str | Path) -> ScenarioMatrix:
    """Parse and validate a matrix config file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config parse error in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be a mapping, got {type(data).__name__}")
    return matrix_from_dict(data)


def matrix_from_dict(data: dict) -> ScenarioMatrix:
    problems: list[str] = []
    _check_unknown(data, _MATRIX_KEYS, "matrix config", problems)

    for required in ("master_seed", "n_traces", "schemes"):
        if required not in data:
            problems.append(f"missing required key '{required}'")
    if problems:
        raise ConfigError(problems)

    master_seed = data["master_seed"]
    if not isinstance(master_seed, int) or not 0 <= master_seed < 2**64:
        problems.append(f"master_seed must be a 64-bit unsigned integer, got {master_seed}")
    n_traces = data["n_traces"]
    if not isinstance(n_traces, int) or n_traces < 2:
        problems.append(f"n_traces must be an integer >= 2, got {n_traces}")
    bins = data.get("bins", DEFAULT_BINS)
    if not isinstance(bins, int) or bins < 2:
        problems.append(f"bins must be an integer >= 2, got {bins}")
    warmup = data.get("warmup", 0)
    if not isinstance(warmup, int) or warmup < 0:
        problems.append(f"warmup must be an integer >= 0, got {warmup}")
    clipping = data.get("clipping", True)
    if not isinstance(clipping, bool):
        problems.append(f"clipping must be a boolean, got {clipping}")

    alphas = data.get("alphas", list(DEFAULT_ALPHAS))
    if (not isinstance(alphas, list) or not alphas
            or any(not isinstance(a, (int, float)) or a < 0 for a in alphas)):
        problems.append(f"alphas must be a nonempty list of reals >= 0, got {alphas}")
    else:
        alphas = [float(a) for a in alphas]

    environments = _parse_enum(
        data.get("environments", DEFAULT_ENVIRONMENTS), Environment,
        "environment", problems)
    leak_models = _parse_enum(
        data.get("leak_models", DEFAULT_LEAK_MODELS), LeakModel,
        "leak model", problems)
    if LeakModel.NONE in leak_models:
        # baseline rows are always added implicitly
        leak_models = [m for m in leak_models if m is not LeakModel.NONE]

    weights = TlriWeights()
    weights_data = data.get("weights", {})
    if not isinstance(weights_data, dict):
        problems.append("weights must be a mapping")
    else:
        _check_unknown(weights_data, _WEIGHT_KEYS, "weights", problems)
        try:
            weights = TlriWeights(**{k: v for k, v in weights_data.items()
                                     if k in _WEIGHT_KEYS})
        except (TypeError, ValueError) as exc:
            problems.append(f"weights: {exc}")

    sweep = SweepSettings()
    sweep_data = data.get("sweep", {})
    if not isinstance(sweep_data, dict):
        problems.append("sweep must be a mapping")
    else:
        _check_unknown(sweep_data, _SWEEP_KEYS, "sweep", problems)
        try:
            sweep = SweepSettings(**{k: v for k, v in sweep_data.items()
                                     if k in _SWEEP_KEYS})
        except TypeError as exc:
            problems.append(f"sweep: {exc}")

    schemes: dict[str, SchemeParams] = {}
    schemes_data = data.get("schemes")
    if not isinstance(schemes_data, dict) or not schemes_data:
        problems.append("schemes must be a nonempty mapping of scheme_id -> params")
    else:
        for scheme_id, params_data in schemes_data.items():
            if not isinstance(params_data, dict):
                problems.append(f"scheme '{scheme_id}' must be a mapping")
                continue
            _check_unknown(params_data, _SCHEME_KEYS,
                           f"scheme '{scheme_id}'", problems)
            known = {k: v for k, v in params_data.items() if k in _SCHEME_KEYS}
            missing = (_SCHEME_KEYS - {"memcmp_delta", "large_baseline"}) - known.keys()
            if missing:
                problems.append(
                    f"scheme '{scheme_id}' missing keys: {', '.join(sorted(missing))}")
                continue
            try:
                schemes[scheme_id] = SchemeParams(**known)
            except ValueError as exc:
                problems.append(f"scheme '{scheme_id}': {exc}")

    if problems:
        raise ConfigError(problems)
    return ScenarioMatrix(
        schemes=schemes,
        environments=environments,
        leak_models=leak_models,
        alphas=alphas,
        n_traces=n_traces,
        master_seed=master_seed,
        bins=bins,
        clipping=clipping,
        warmup=warmup,
        weights=weights,
        sweep=sweep,
    )


def default_config_path() -> Path:
    """Path of the bundled calibrated preset matrix."""
    return Path(resources.files("tlri") / "presets" / "paper_matrix.yaml")
