"""Repeated training trials, k-fold cross-validation and the encoder sweep.

All routines take a seed or an RngStream and derive one child stream per
independent work unit (trial, or grid cell x fold x trial), so results are
identical for any worker count and any execution order.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..benchfn import SampledProblem
from ..dataio import Dataset
from ..errors import ConfigError, InvalidInputError
from ..linalg import SolverConfig
from ..methods import TUNABLE, GeneratorConfig, family_config, generate_hidden_layer
from ..model import TrainedNetwork, predict, rmse, train_readout
from ..paramgen import AnchorPolicy, input_hypercube
from ..rae import Raem1Config
from ..rng import as_stream


@dataclass(frozen=True)
class TrialReport:
    """Outcome of one training trial."""

    trial: int
    seed: int
    rmse_train: float
    rmse_test: float
    wall_time_s: float
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.rmse_train < 0 or self.rmse_test < 0:
            raise InvalidInputError("rmse values must be nonnegative")


def _map_units(worker, count: int, jobs: int) -> list:
    """Run worker(0..count-1), optionally on a thread pool; order preserved."""
    if jobs <= 1 or count <= 1:
        return [worker(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, range(count)))


def run_trials(
    method: GeneratorConfig,
    problem: SampledProblem,
    m: int,
    trials: int,
    seed,
    *,
    solver: SolverConfig = SolverConfig(),
    snapshot_weights: bool = False,
    jobs: int = 1,
) -> list[TrialReport]:
    """Train `trials` independent networks and report train/test RMSE.

    Trial t draws all randomness from child stream t of the given seed, so
    any subset of trials can be reproduced in isolation.
    """
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    if m < 1:
        raise ConfigError(f"node count must be >= 1, got {m}")
    stream = as_stream(seed)
    train, test = problem.train, problem.test
    cube = input_hypercube(train.x)

    def one(t: int) -> TrialReport:
        t0 = time.perf_counter()
        layer = generate_hidden_layer(method, train.x, cube, m, stream.child(t), solver)
        beta = train_readout(layer, train.x, train.y, solver)
        net = TrainedNetwork(hidden=layer, readout=beta)
        report = TrialReport(
            trial=t,
            seed=stream.seed,
            rmse_train=rmse(predict(net, train.x), train.y),
            rmse_test=rmse(predict(net, test.x), test.y),
            wall_time_s=time.perf_counter() - t0,
            weights=layer.weights.copy() if snapshot_weights else None,
        )
        return report

    return _map_units(one, trials, jobs)


@dataclass(frozen=True)
class GridSearchConfig:
    """Grid of node counts and interval values searched by cross-validation."""

    node_counts: Sequence[int]
    interval_grid: Sequence[float] = ()
    folds: int = 5
    trials_per_cell: int = 3
    seed: int = 0

    def __post_init__(self):
        if len(self.node_counts) == 0:
            raise ConfigError("node_counts must be nonempty")
        if any(m < 1 for m in self.node_counts):
            raise ConfigError("node counts must be >= 1")
        if self.folds < 2:
            raise ConfigError(f"folds must be >= 2, got {self.folds}")
        if self.trials_per_cell < 1:
            raise ConfigError("trials_per_cell must be >= 1")


@dataclass(frozen=True)
class CvCell:
    m: int
    interval: Optional[float]
    mean_rmse: float


@dataclass(frozen=True)
class CvResult:
    best_m: int
    best_interval: Optional[float]
    table: tuple[CvCell, ...]


def kfold_indices(n: int, folds: int, rng) -> list[tuple[np.ndarray, np.ndarray]]:
    """Shuffle once, then cut into `folds` contiguous validation blocks."""
    if folds < 2 or folds > n:
        raise InvalidInputError(f"need 2 <= folds <= {n}, got {folds}")
    perm = as_stream(rng).generator().permutation(n)
    blocks = np.array_split(perm, folds)
    out = []
    for f in range(folds):
        val = np.sort(blocks[f])
        train = np.sort(np.concatenate([blocks[g] for g in range(folds) if g != f]))
        out.append((train, val))
    return out


def select_best(table: Sequence[CvCell]) -> CvCell:
    """Cell with the lowest mean RMSE; ties go to smaller m, then smaller interval."""
    if len(table) == 0:
        raise ConfigError("empty cross-validation table")

    def key(cell: CvCell):
        interval = cell.interval if cell.interval is not None else 0.0
        return (cell.mean_rmse, cell.m, interval)

    return min(table, key=key)


def cross_validate(
    grid: GridSearchConfig,
    family: str,
    train: Dataset,
    *,
    anchor: AnchorPolicy | None = None,
    solver: SolverConfig = SolverConfig(),
    jobs: int = 1,
    stream=None,
) -> CvResult:
    """Mean validation RMSE for every grid cell; returns the argmin cell.

    Tunable families (ram, ralpham, raem1) cross the node grid with the
    interval grid; the parameter-free families search node count only. Cell
    (ci), fold (f), trial (t) together index the child stream, making every
    fold evaluation independently reproducible. Randomness comes from
    `stream` when given, else from the grid's seed.
    """
    intervals: Sequence[Optional[float]]
    if family in TUNABLE:
        if len(grid.interval_grid) == 0:
            raise ConfigError(f"method {family!r} needs a nonempty interval_grid")
        intervals = list(grid.interval_grid)
    else:
        intervals = [None]
    if train.n_samples < grid.folds:
        raise InvalidInputError(
            f"need at least folds={grid.folds} samples, got {train.n_samples}"
        )

    stream = as_stream(grid.seed) if stream is None else as_stream(stream)
    cells = [(m, iv) for m in grid.node_counts for iv in intervals]
    folds = kfold_indices(train.n_samples, grid.folds, stream.child(0, 0))
    splits = [(train.subset(tr), train.subset(va)) for tr, va in folds]

    def eval_cell(ci: int) -> CvCell:
        m, interval = cells[ci]
        cfg = family_config(family, interval, anchor)
        errs = []
        for f, (fold_train, fold_val) in enumerate(splits):
            cube = input_hypercube(fold_train.x)
            for t in range(grid.trials_per_cell):
                child = stream.child(1, ci, f, t)
                layer = generate_hidden_layer(cfg, fold_train.x, cube, m, child, solver)
                beta = train_readout(layer, fold_train.x, fold_train.y, solver)
                net = TrainedNetwork(hidden=layer, readout=beta)
                errs.append(rmse(predict(net, fold_val.x), fold_val.y))
        return CvCell(m=m, interval=interval, mean_rmse=float(np.mean(errs)))

    table = tuple(_map_units(eval_cell, len(cells), jobs))
    best = select_best(table)
    return CvResult(best_m=best.m, best_interval=best.interval, table=table)


@dataclass(frozen=True)
class SweepPoint:
    u_ae: float
    median_abs_weight: float
    mean_rmse: float


def uae_sweep(
    problem: SampledProblem,
    m: int,
    uae_values: Sequence[float],
    trials: int,
    seed,
    *,
    anchor: AnchorPolicy | None = None,
    solver: SolverConfig = SolverConfig(),
    jobs: int = 1,
) -> list[SweepPoint]:
    """Encoder-interval sweep: how u_ae shapes the produced weights and RMSE.

    For each u_ae the reported weight statistic is the per-trial median of
    |hidden weights|, averaged over trials; RMSE is the mean test RMSE.
    """
    if len(uae_values) == 0:
        raise ConfigError("uae_values must be nonempty")
    if any(u <= 0 for u in uae_values):
        raise ConfigError("uae_values must be positive")
    stream = as_stream(seed)
    anchor = anchor if anchor is not None else AnchorPolicy()
    train, test = problem.train, problem.test
    cube = input_hypercube(train.x)

    def eval_point(k: int) -> SweepPoint:
        cfg = Raem1Config(u_ae=float(uae_values[k]), anchor=anchor)
        medians, errs = [], []
        for t in range(trials):
            child = stream.child(k, t)
            layer = generate_hidden_layer(cfg, train.x, cube, m, child, solver)
            beta = train_readout(layer, train.x, train.y, solver)
            net = TrainedNetwork(hidden=layer, readout=beta)
            medians.append(float(np.median(np.abs(layer.weights))))
            errs.append(rmse(predict(net, test.x), test.y))
        return SweepPoint(
            u_ae=float(uae_values[k]),
            median_abs_weight=float(np.mean(medians)),
            mean_rmse=float(np.mean(errs)),
        )

    return _map_units(eval_point, len(uae_values), jobs)
