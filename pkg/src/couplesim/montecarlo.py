"""Stochastic trajectory sampling of individual couples.

A time step updates both partners in parallel from the *old* pair: each
partner draws one uniform number and picks the new state by comparing it
against the cumulative transition probabilities in the fixed order
-1, 0, 1, 2. Partner 1 draws first (counter 2t), partner 2 second
(counter 2t+1); the parallel semantics make the order irrelevant for the
law of the chain, but fixing it makes trajectories byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import individual_kernel
from .rng import DrawStream, counter_uniform, derive_seed_array
from .states import STATES, CoupleState, ModelParams, encode


@dataclass(frozen=True)
class Trajectory:
    """One sampled path; states has length steps + 1."""

    seed: int
    params: ModelParams
    states: tuple[CoupleState, ...]


def sample_individual(
    s_self: int, s_partner: int, kernel: np.ndarray, rand: float
) -> int:
    """Pick the next individual state by the cumulative threshold rule.

    kernel is a 4x4x4 individual table; rand must lie in [0, 1). Any
    residual probability (the "otherwise" branch) selects state 2.
    """
    if not 0.0 <= rand < 1.0:
        raise ValueError(f"rand must lie in [0, 1), got {rand!r}")
    row = kernel[s_self + 1, s_partner + 1]
    cumulative = np.cumsum(row[:3])
    return STATES[int((rand >= cumulative).sum())]


def sample_step(state: CoupleState, params: ModelParams, stream: DrawStream) -> CoupleState:
    """Update both partners in parallel; consumes exactly two draws."""
    k1 = individual_kernel(params.model, params.p1)
    k2 = individual_kernel(params.model, params.p2)
    s1, s2 = state
    r1 = stream.next()
    r2 = stream.next()
    n1 = sample_individual(s1, s2, k1, r1)
    n2 = sample_individual(s2, s1, k2, r2)
    return (n1, n2)


def sample_trajectory(
    start: CoupleState, params: ModelParams, steps: int, seed: int
) -> Trajectory:
    """Reproducible path of `steps` transitions from `start`."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    encode(start)  # validates
    stream = DrawStream(seed)
    states = [start]
    current = start
    for _ in range(steps):
        current = sample_step(current, params, stream)
        states.append(current)
    return Trajectory(seed=int(seed), params=params, states=tuple(states))


def estimate_distribution(
    start: CoupleState,
    params: ModelParams,
    steps: int,
    ensemble_size: int,
    master_seed: int,
) -> np.ndarray:
    """Empirical distribution of the final states of an ensemble.

    Trajectory i runs on its own stream with seed derive_seed(master_seed, i),
    so the result does not depend on how trajectories are batched or
    scheduled; the whole ensemble is advanced vectorized here, one step at
    a time, and matches sample_trajectory draw for draw.
    """
    if ensemble_size < 1:
        raise ValueError(f"ensemble_size must be >= 1, got {ensemble_size}")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    encode(start)
    k1 = individual_kernel(params.model, params.p1)
    k2 = individual_kernel(params.model, params.p2)
    cum1 = k1.cumsum(axis=2)
    cum2 = k2.cumsum(axis=2)
    seeds = derive_seed_array(master_seed, np.arange(ensemble_size))
    x1 = np.full(ensemble_size, start[0] + 1)
    x2 = np.full(ensemble_size, start[1] + 1)
    for t in range(steps):
        r1 = counter_uniform(seeds, 2 * t)
        r2 = counter_uniform(seeds, 2 * t + 1)
        n1 = (r1[:, None] >= cum1[x1, x2, :3]).sum(axis=1)
        n2 = (r2[:, None] >= cum2[x2, x1, :3]).sum(axis=1)
        x1, x2 = n1, n2
    counts = np.bincount(4 * x1 + x2, minlength=16)
    return counts / ensemble_size


def format_trajectory(trajectory: Trajectory) -> list[str]:
    """Text lines `t=<k>, s1=<v> s2=<v>`, one per recorded state."""
    return [
        f"t={t}, s1={s1} s2={s2}" for t, (s1, s2) in enumerate(trajectory.states)
    ]
