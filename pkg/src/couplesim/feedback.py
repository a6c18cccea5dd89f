"""Self-consistent mean-field feedback on the control parameters.

The couple is imagined surrounded by identical couples mirroring its own
dynamics. Each turn, the chain restarts from the canonical initial state,
runs a fixed number of inner steps, and the violence perceived in that
environment nudges the parameters: aggressiveness polarizes toward 0 or 1
(f_update), support erodes or recovers (g_update), depending on whether
the perceived violence exceeds the threshold v_c.

Perceived violence per partner:
  aggression model: v1 = P(2,-1;T) + P(2,2;T), v2 = P(-1,2;T) + P(2,2;T)
    (exposure to the violence-absorbing states);
  support model: the marginal probability of being violent at time T,
    which reduces to the same quantity when the violent mass concentrates
    on the absorbing states.
Gender-blind feedback applies the average (v1+v2)/2 to both partners;
gender-specific feedback applies v1 to partner 1 and v2 to partner 2.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .kernels import build_couple_kernel
from .markov import delta_distribution, evolve
from .montecarlo import estimate_distribution
from .observables import (
    AbsorptionBasins,
    PathWeights,
    gender_violence,
    model1_basins,
    model2_observables,
    violent_marginals,
)
from .rng import derive_seed
from .states import CoupleState, Model, ModelParams, validate_param


class GenderMode(Enum):
    BLIND = "blind"
    SPECIFIC = "specific"


class Engine(Enum):
    EXACT = "exact"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class FeedbackConfig:
    """Loop parameters; defaults follow the reference setup."""

    vc: float = 0.1
    inner_steps: int = 20
    turns: int = 20
    gender_mode: GenderMode = GenderMode.BLIND
    engine: Engine = Engine.EXACT
    ensemble_size: int = 1000

    def __post_init__(self) -> None:
        validate_param(self.vc, "vc")
        if self.inner_steps < 1:
            raise ValueError(f"inner_steps must be >= 1, got {self.inner_steps}")
        if self.turns < 1:
            raise ValueError(f"turns must be >= 1, got {self.turns}")
        if self.ensemble_size < 1:
            raise ValueError(f"ensemble_size must be >= 1, got {self.ensemble_size}")


@dataclass(frozen=True)
class TurnRecord:
    """Parameters in force during one turn and what they produced."""

    turn: int
    p1: float
    p2: float
    v1: float
    v2: float
    observables: AbsorptionBasins | PathWeights


FeedbackTrace = list[TurnRecord]


def f_update(a: float, v: float, vc: float) -> float:
    """Aggressiveness polarization: grows above the threshold, decays below.

    a' = 1 - (1-a)^(1+v-vc) if v > vc, else a^(vc-v+1). Both branches fix
    0 and 1 and leave a unchanged at v = vc.
    """
    validate_param(a, "a")
    validate_param(v, "v")
    validate_param(vc, "vc")
    if v > vc:
        return 1.0 - (1.0 - a) ** (1.0 + v - vc)
    return a ** (vc - v + 1.0)


def g_update(supp: float, v: float, vc: float) -> float:
    """Support erosion: shrinks above the threshold, recovers below.

    s' = s^(v-vc+1) if v > vc, else 1 - (1-s)^(1+vc-v).
    """
    validate_param(supp, "supp")
    validate_param(v, "v")
    validate_param(vc, "vc")
    if v > vc:
        return supp ** (v - vc + 1.0)
    return 1.0 - (1.0 - supp) ** (1.0 + vc - v)


def _measure(
    params: ModelParams,
    config: FeedbackConfig,
    start: CoupleState,
    seed: int,
) -> tuple[float, float, AbsorptionBasins | PathWeights]:
    if config.engine is Engine.EXACT:
        kernel = build_couple_kernel(params)
        dist = evolve(delta_distribution(start), kernel, config.inner_steps)
    else:
        dist = estimate_distribution(
            start, params, config.inner_steps, config.ensemble_size, seed
        )
    if params.model is Model.AGGRESSION:
        gv = gender_violence(dist)
        obs: AbsorptionBasins | PathWeights = model1_basins(dist)
    else:
        gv = violent_marginals(dist)
        obs = model2_observables(dist, params.p1, params.p2)
    # the unrenormalized evolution can leave v outside [0,1] by ~1e-16
    v1 = min(max(gv.v1, 0.0), 1.0)
    v2 = min(max(gv.v2, 0.0), 1.0)
    return v1, v2, obs


def self_consistent_run(
    init_params: ModelParams,
    config: FeedbackConfig,
    start: CoupleState = (1, 0),
    master_seed: int = 0,
) -> FeedbackTrace:
    """Iterate measure-then-update for config.turns turns.

    Record k holds the parameters after k updates together with the
    violence and observables they generate, so the trace has turns + 1
    records and the last one is the settled measurement. With the exact
    engine the whole run is deterministic; with the Monte Carlo engine
    turn k measures on seed derive_seed(master_seed, k).
    """
    update = f_update if init_params.model is Model.AGGRESSION else g_update
    params = init_params
    trace: FeedbackTrace = []
    for turn in range(config.turns + 1):
        v1, v2, obs = _measure(params, config, start, derive_seed(master_seed, turn))
        trace.append(
            TurnRecord(turn=turn, p1=params.p1, p2=params.p2, v1=v1, v2=v2, observables=obs)
        )
        if turn == config.turns:
            break
        if config.gender_mode is GenderMode.BLIND:
            v = (v1 + v2) / 2.0
            new_p1 = update(params.p1, v, config.vc)
            new_p2 = update(params.p2, v, config.vc)
        else:
            new_p1 = update(params.p1, v1, config.vc)
            new_p2 = update(params.p2, v2, config.vc)
        params = replace(params, p1=new_p1, p2=new_p2)
    return trace
