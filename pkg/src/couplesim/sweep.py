"""Parameter-plane scans over (p1, p2) in [0,1]^2.

Every cell of a sweep is an independent work item with its own derived
seed, and results are merged positionally, so the output is identical for
any worker count. With the exact engine a run is deterministic, so
averaging repeated runs per cell would reproduce a single run; the sweep
therefore computes one run per cell in that case regardless of
runs_per_cell.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .feedback import Engine, FeedbackConfig, GenderMode, self_consistent_run
from .kernels import build_couple_kernel
from .markov import delta_distribution, evolve
from .montecarlo import estimate_distribution
from .observables import (
    gender_violence,
    model1_basins,
    model2_observables,
    violent_marginals,
)
from .rng import derive_seed
from .states import CoupleState, Model, ModelParams, encode


class Scenario(Enum):
    MODEL1_PLAIN = "model1-plain"
    MODEL1_SC_BLIND = "model1-sc-blind"
    MODEL1_SC_GENDER = "model1-sc-gender"
    MODEL2_PLAIN = "model2-plain"
    MODEL2_SC_BLIND = "model2-sc-blind"
    MODEL2_SC_GENDER = "model2-sc-gender"

    @property
    def model(self) -> Model:
        if self in (Scenario.MODEL1_PLAIN, Scenario.MODEL1_SC_BLIND, Scenario.MODEL1_SC_GENDER):
            return Model.AGGRESSION
        return Model.SUPPORT

    @property
    def self_consistent(self) -> bool:
        return self not in (Scenario.MODEL1_PLAIN, Scenario.MODEL2_PLAIN)

    @property
    def gender_mode(self) -> GenderMode:
        if self in (Scenario.MODEL1_SC_GENDER, Scenario.MODEL2_SC_GENDER):
            return GenderMode.SPECIFIC
        return GenderMode.BLIND


MODEL1_FIELDS = ("normal", "separation", "male_violence", "female_violence", "v1", "v2")
MODEL2_FIELDS = (
    "normal",
    "threshold",
    "recovering",
    "violence_cycle",
    "mutual_violence",
    "separation",
    "v1",
    "v2",
)
# v1/v2 are reported but never compete for a cell's dominant observable.
MODEL1_DOMINANCE = MODEL1_FIELDS[:4]
MODEL2_DOMINANCE = MODEL2_FIELDS[:6]


@dataclass(frozen=True)
class SweepSpec:
    """Full description of one sweep; everything downstream derives from it."""

    scenario: Scenario
    resolution: int = 51
    runs_per_cell: int | None = None
    engine: Engine = Engine.EXACT
    ensemble_size: int = 1000
    master_seed: int = 0
    vc: float = 0.1
    inner_steps: int = 20
    turns: int = 20
    plain_steps: int | None = None
    start: CoupleState = (1, 0)

    def __post_init__(self) -> None:
        if self.resolution < 2:
            raise ValueError(f"resolution must be >= 2, got {self.resolution}")
        if self.resolution > 201:
            raise ValueError(f"resolution capped at 201, got {self.resolution}")
        if self.runs_per_cell is not None and self.runs_per_cell < 1:
            raise ValueError(f"runs_per_cell must be >= 1, got {self.runs_per_cell}")
        if self.plain_steps is not None and self.plain_steps < 0:
            raise ValueError(f"plain_steps must be >= 0, got {self.plain_steps}")
        encode(self.start)
        FeedbackConfig(  # validates vc / inner_steps / turns / ensemble_size
            vc=self.vc,
            inner_steps=self.inner_steps,
            turns=self.turns,
            engine=self.engine,
            ensemble_size=self.ensemble_size,
        )

    @property
    def grid(self) -> np.ndarray:
        """Axis values: resolution points from 0 to 1 inclusive."""
        return np.linspace(0.0, 1.0, self.resolution)

    @property
    def field_names(self) -> tuple[str, ...]:
        return MODEL1_FIELDS if self.scenario.model is Model.AGGRESSION else MODEL2_FIELDS

    @property
    def dominance_fields(self) -> tuple[str, ...]:
        return MODEL1_DOMINANCE if self.scenario.model is Model.AGGRESSION else MODEL2_DOMINANCE

    @property
    def effective_runs(self) -> int:
        if self.engine is Engine.EXACT:
            return 1
        if self.runs_per_cell is not None:
            return self.runs_per_cell
        return 20 if self.scenario.self_consistent else 1

    @property
    def effective_plain_steps(self) -> int:
        if self.plain_steps is not None:
            return self.plain_steps
        return 500 if self.scenario.model is Model.AGGRESSION else 20

    def feedback_config(self) -> FeedbackConfig:
        return FeedbackConfig(
            vc=self.vc,
            inner_steps=self.inner_steps,
            turns=self.turns,
            gender_mode=self.scenario.gender_mode,
            engine=self.engine,
            ensemble_size=self.ensemble_size,
        )


@dataclass(frozen=True)
class SweepGrid:
    """Per-field matrices; fields[name][i, j] belongs to p1=grid[i], p2=grid[j]."""

    spec: SweepSpec
    fields: dict[str, np.ndarray] = field(repr=False)

    def dominant_indices(self) -> np.ndarray:
        """Index (into spec.dominance_fields) of each cell's largest observable."""
        stack = np.stack([self.fields[name] for name in self.spec.dominance_fields])
        return np.argmax(stack, axis=0)

    def dominance_counts(self) -> dict[str, int]:
        dom = self.dominant_indices()
        return {
            name: int((dom == k).sum())
            for k, name in enumerate(self.spec.dominance_fields)
        }


@dataclass(frozen=True)
class GridComparison:
    cells_dominant_in_1: int
    cells_dominant_in_2: int
    l1_difference: float


def _measure_fields(spec: SweepSpec, dist: np.ndarray, params: ModelParams) -> np.ndarray:
    if spec.scenario.model is Model.AGGRESSION:
        obs = model1_basins(dist).as_dict()
        gv = gender_violence(dist)
    else:
        obs = model2_observables(dist, params.p1, params.p2).as_dict()
        gv = violent_marginals(dist)
    obs["v1"] = gv.v1
    obs["v2"] = gv.v2
    return np.array([obs[name] for name in spec.field_names])


def _cell_values(spec: SweepSpec, i: int, j: int) -> np.ndarray:
    grid = spec.grid
    params = ModelParams(model=spec.scenario.model, p1=float(grid[i]), p2=float(grid[j]))
    runs = spec.effective_runs
    total = np.zeros(len(spec.field_names))
    for run in range(runs):
        seed = derive_seed(spec.master_seed, i, j, run)
        if spec.scenario.self_consistent:
            trace = self_consistent_run(
                params, spec.feedback_config(), start=spec.start, master_seed=seed
            )
            last = trace[-1]
            values = np.array(
                [
                    {**last.observables.as_dict(), "v1": last.v1, "v2": last.v2}[name]
                    for name in spec.field_names
                ]
            )
        else:
            if spec.engine is Engine.EXACT:
                kernel = build_couple_kernel(params)
                dist = evolve(delta_distribution(spec.start), kernel, spec.effective_plain_steps)
            else:
                dist = estimate_distribution(
                    spec.start, params, spec.effective_plain_steps, spec.ensemble_size, seed
                )
            values = _measure_fields(spec, dist, params)
        total += values
    return total / runs


def _compute_rows(spec: SweepSpec, rows: list[int]) -> tuple[list[int], np.ndarray]:
    out = np.empty((len(rows), spec.resolution, len(spec.field_names)))
    for k, i in enumerate(rows):
        for j in range(spec.resolution):
            out[k, j] = _cell_values(spec, i, j)
    return rows, out


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepGrid:
    """Scan the full grid; output is independent of the worker count."""
    resolution = spec.resolution
    values = np.empty((resolution, resolution, len(spec.field_names)))
    if workers <= 1:
        _, block = _compute_rows(spec, list(range(resolution)))
        values[:] = block
    else:
        chunks = [list(range(start, resolution, workers)) for start in range(workers)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            for rows, block in pool.map(_compute_rows, [spec] * len(chunks), chunks):
                for k, i in enumerate(rows):
                    values[i] = block[k]
    fields = {
        name: values[:, :, k].copy() for k, name in enumerate(spec.field_names)
    }
    return SweepGrid(spec=spec, fields=fields)


def compare_grids(grid1: SweepGrid, grid2: SweepGrid, field_name: str) -> GridComparison:
    """Dominance counts for one field in each grid, plus their L1 distance."""
    spec1, spec2 = grid1.spec, grid2.spec
    if spec1.resolution != spec2.resolution:
        raise ValueError(
            f"grids have different resolutions: {spec1.resolution} vs {spec2.resolution}"
        )
    if spec1.field_names != spec2.field_names:
        raise ValueError("grids carry different observable fields")
    if field_name not in spec1.field_names:
        raise ValueError(f"unknown field {field_name!r}; have {spec1.field_names}")
    counts1 = grid1.dominance_counts()
    counts2 = grid2.dominance_counts()
    l1 = float(np.abs(grid1.fields[field_name] - grid2.fields[field_name]).sum())
    return GridComparison(
        cells_dominant_in_1=counts1.get(field_name, 0),
        cells_dominant_in_2=counts2.get(field_name, 0),
        l1_difference=l1,
    )
