"""Experiment configuration: JSON file schema plus CLI flag overlay.

A config file is a single JSON object; every key can also be set (and
overridden) by a command-line flag. Example:

    {
      "problem": {"tf": "TF1", "n": 2},
      "methods": [
        {"method": "ralpham", "alpha_max_deg": 90.0},
        {"method": "ram", "u": 20.0}
      ],
      "nodes": 800,
      "trials": 10,
      "seed": 1,
      "grid": {"node_counts": [100, 300, 800], "interval_grid": [1, 10, 100]},
      "sweep": {"points": 25, "lo": 1e-5, "hi": 10.0},
      "output_dir": "out",
      "format": "csv",
      "jobs": 1
    }

A problem is either a sampled target function ({"tf": name, "n": dim,
optional "train_size"/"test_size"}) or a data file ({"data": path, optional
"target_column", "header", "delimiter"}), which is normalized to [0, 1] and
split 75/25.

Seed namespace: child 0 samples or splits the problem, child (1, i) runs
method i's trials, child (2, i) its cross-validation, child 3 the sweep.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..benchfn import SampledProblem, TargetFunction, sample_problem
from ..dataio import load_csv, normalize, split_75_25
from ..errors import ConfigError
from ..methods import METHOD_NAMES, GeneratorConfig, method_from_dict
from ..paramgen import AnchorPolicy
from ..rng import RngStream, as_stream
from .trials import GridSearchConfig

DEFAULT_SEED = 1
DEFAULT_TRIALS = 10
DEFAULT_SWEEP = {"points": 25, "lo": 1e-5, "hi": 10.0}
DEFAULT_ALPHA_GRID = [10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0]


def default_interval_grid(family: str) -> list[float]:
    """Log grids for u and u_ae; a 10-degree ladder for slope angles."""
    if family == "ralpham":
        return list(DEFAULT_ALPHA_GRID)
    if family == "ram":
        return [float(v) for v in np.geomspace(1e-2, 1e2, 13)]
    if family == "raem1":
        return [float(v) for v in np.geomspace(1e-5, 10.0, 25)]
    return []


@dataclass(frozen=True)
class ProblemSpec:
    """Where the train/test data comes from: a TF sample or a file."""

    tf: Optional[str] = None
    n: Optional[int] = None
    train_size: Optional[int] = None
    test_size: Optional[int] = None
    data: Optional[str] = None
    target_column: Optional[object] = None
    header: bool = False
    delimiter: str = ","

    def __post_init__(self):
        if (self.tf is None) == (self.data is None):
            raise ConfigError("problem needs exactly one of 'tf' or 'data'")
        if self.tf is not None and self.n is None:
            raise ConfigError("a tf problem needs 'n'")

    def realize(self, rng: RngStream) -> SampledProblem:
        """Sample the TF or load+normalize+split the file, deterministically."""
        if self.tf is not None:
            return sample_problem(
                TargetFunction(self.tf, int(self.n)),
                rng,
                train_size=self.train_size,
                test_size=self.test_size,
            )
        ds = load_csv(
            self.data,
            delimiter=self.delimiter,
            header=self.header,
            target_column=self.target_column,
        )
        train_raw, test_raw = split_75_25(ds, rng)
        train, spec = normalize(train_raw, input_range=(0.0, 1.0), output_range=(0.0, 1.0))
        test, _ = normalize(test_raw, spec)
        return SampledProblem(train=train, test=test, normalization=spec)

    def describe(self) -> dict:
        if self.tf is not None:
            return {
                "tf": self.tf,
                "n": self.n,
                "train_size": self.train_size,
                "test_size": self.test_size,
            }
        return {
            "data": self.data,
            "target_column": self.target_column,
            "header": self.header,
            "delimiter": self.delimiter,
        }


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved settings for one CLI invocation.

    Method specs are kept as dicts so a bare family tag (enough for grid
    search, where the interval is searched rather than given) stays valid;
    `generator(i)` materializes a full config and rejects incomplete specs.
    """

    problem: ProblemSpec
    method_specs: tuple[dict, ...]
    nodes: int = 100
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    grid: Optional[GridSearchConfig] = None
    sweep_values: tuple[float, ...] = ()
    output_dir: str = "out"
    out_format: str = "csv"
    jobs: int = 1
    histogram_bins: int = 50

    def __post_init__(self):
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.out_format!r}")
        if self.nodes < 1 or self.trials < 1 or self.jobs < 1:
            raise ConfigError("nodes, trials and jobs must all be >= 1")
        for spec in self.method_specs:
            if spec.get("method") not in METHOD_NAMES:
                raise ConfigError(
                    f"unknown method tag {spec.get('method')!r}; "
                    f"choose from {list(METHOD_NAMES)}"
                )

    @property
    def method_count(self) -> int:
        return len(self.method_specs)

    def family(self, i: int) -> str:
        return self.method_specs[i]["method"]

    def anchor(self, i: int) -> Optional[AnchorPolicy]:
        spec = self.method_specs[i]
        if "anchor" in spec:
            d = spec["anchor"]
            return AnchorPolicy(
                kind=d.get("kind", "train-point"),
                kmeans_max_iter=int(d.get("kmeans_max_iter", 100)),
                kmeans_rel_tol=float(d.get("kmeans_rel_tol", 1e-6)),
            )
        return None

    def generator(self, i: int) -> GeneratorConfig:
        return method_from_dict(self.method_specs[i])

    def root_stream(self) -> RngStream:
        return as_stream(self.seed)

    def problem_stream(self) -> RngStream:
        return self.root_stream().child(0)

    def trial_stream(self, method_index: int) -> RngStream:
        return self.root_stream().child(1, method_index)

    def cv_stream(self, method_index: int) -> RngStream:
        return self.root_stream().child(2, method_index)

    def sweep_stream(self) -> RngStream:
        return self.root_stream().child(3)


def _problem_from_dict(d: dict) -> ProblemSpec:
    known = {"tf", "n", "train_size", "test_size", "data", "target_column",
             "header", "delimiter"}
    extra = set(d) - known
    if extra:
        raise ConfigError(f"unknown problem keys: {sorted(extra)}")
    return ProblemSpec(**d)


def _grid_from_dict(d: dict, seed: int) -> GridSearchConfig:
    known = {"node_counts", "interval_grid", "folds", "trials_per_cell", "seed"}
    extra = set(d) - known
    if extra:
        raise ConfigError(f"unknown grid keys: {sorted(extra)}")
    if "node_counts" not in d:
        raise ConfigError("grid needs 'node_counts'")
    return GridSearchConfig(
        node_counts=[int(m) for m in d["node_counts"]],
        interval_grid=[float(v) for v in d.get("interval_grid", [])],
        folds=int(d.get("folds", 5)),
        trials_per_cell=int(d.get("trials_per_cell", 3)),
        seed=int(d.get("seed", seed)),
    )


def _sweep_values(d: dict) -> tuple[float, ...]:
    if "values" in d:
        vals = [float(v) for v in d["values"]]
    else:
        lo = float(d.get("lo", DEFAULT_SWEEP["lo"]))
        hi = float(d.get("hi", DEFAULT_SWEEP["hi"]))
        points = int(d.get("points", DEFAULT_SWEEP["points"]))
        if not (0 < lo < hi) or points < 2:
            raise ConfigError("sweep needs 0 < lo < hi and points >= 2")
        vals = [float(v) for v in np.geomspace(lo, hi, points)]
    if any(v <= 0 for v in vals):
        raise ConfigError("sweep values must be positive")
    return tuple(vals)


def load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path}: invalid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path}: top level must be an object")
    return raw


def build_config(raw: dict, overrides: dict) -> ExperimentConfig:
    """Merge a config dict with CLI overrides (overrides win) and validate."""
    merged = dict(raw)
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value

    known = {"problem", "method", "methods", "nodes", "trials", "seed", "grid",
             "sweep", "output_dir", "format", "jobs", "histogram_bins"}
    extra = set(merged) - known
    if extra:
        raise ConfigError(f"unknown config keys: {sorted(extra)}")

    if "problem" not in merged:
        raise ConfigError("missing 'problem' section (or --tf/--data flag)")
    problem = _problem_from_dict(dict(merged["problem"]))

    if "methods" in merged:
        raw_methods = merged["methods"]
    elif "method" in merged:
        raw_methods = [merged["method"]]
    else:
        raw_methods = []
    specs = []
    for m in raw_methods:
        if isinstance(m, str):
            specs.append({"method": m})
        elif isinstance(m, dict):
            specs.append(dict(m))
        else:
            raise ConfigError("each method must be a tag string or an object")
    method_specs = tuple(specs)

    seed = int(merged.get("seed", DEFAULT_SEED))
    grid = _grid_from_dict(dict(merged["grid"]), seed) if "grid" in merged else None
    sweep = _sweep_values(dict(merged.get("sweep", DEFAULT_SWEEP)))

    return ExperimentConfig(
        problem=problem,
        method_specs=method_specs,
        nodes=int(merged.get("nodes", 100)),
        trials=int(merged.get("trials", DEFAULT_TRIALS)),
        seed=seed,
        grid=grid,
        sweep_values=sweep,
        output_dir=str(merged.get("output_dir", "out")),
        out_format=str(merged.get("format", "csv")),
        jobs=int(merged.get("jobs", 1)),
        histogram_bins=int(merged.get("histogram_bins", 50)),
    )


def describe_config(cfg: ExperimentConfig) -> dict:
    """JSON-ready echo of the resolved configuration (for summary files)."""
    out = {
        "problem": cfg.problem.describe(),
        "methods": [dict(spec) for spec in cfg.method_specs],
        "nodes": cfg.nodes,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "format": cfg.out_format,
    }
    if cfg.grid is not None:
        out["grid"] = {
            "node_counts": list(cfg.grid.node_counts),
            "interval_grid": list(cfg.grid.interval_grid),
            "folds": cfg.grid.folds,
            "trials_per_cell": cfg.grid.trials_per_cell,
            "seed": cfg.grid.seed,
        }
    return out
