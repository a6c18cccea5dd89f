import numpy as np
import pytest

from couplesim import (
    Model,
    ModelParams,
    build_couple_kernel,
    delta_distribution,
    derive_seed,
    encode,
    estimate_distribution,
    evolve,
    format_trajectory,
    individual_kernel,
    sample_individual,
    sample_step,
    sample_trajectory,
)
from couplesim.rng import DrawStream

AGG = ModelParams(Model.AGGRESSION, 0.3, 0.3)


def test_sample_individual_threshold_rule():
    kernel = individual_kernel(Model.AGGRESSION, 0.3)
    # cumulative bounds for (self=1, partner=0) are 0.7, 0.7, 0.775
    assert sample_individual(1, 0, kernel, 0.5) == -1
    assert sample_individual(1, 0, kernel, 0.71) == 1
    assert sample_individual(1, 0, kernel, 0.99) == 2
    with pytest.raises(ValueError):
        sample_individual(1, 0, kernel, 1.0)


def test_sample_step_deterministic_at_zero_aggression():
    params = ModelParams(Model.AGGRESSION, 0.0, 0.0)
    for seed in range(5):
        assert sample_step((1, 0), params, DrawStream(seed)) == (-1, -1)


def test_sample_step_keeps_absorbing_state():
    for seed in range(5):
        assert sample_step((0, 0), AGG, DrawStream(seed)) == (0, 0)
        assert sample_step((2, 2), AGG, DrawStream(seed)) == (2, 2)


def test_one_step_frequencies_match_kernel_row():
    kernel = build_couple_kernel(AGG)
    row = kernel.matrix[encode((1, 0))]
    n = 100_000
    freq = estimate_distribution((1, 0), AGG, 1, n, master_seed=123)
    for idx in range(16):
        sigma = np.sqrt(row[idx] * (1 - row[idx]) / n)
        assert abs(freq[idx] - row[idx]) <= 3 * sigma + 1e-12


def test_updates_condition_on_previous_partner_state():
    # At full aggressiveness, (1,0) can step to (2,1) only because partner 2
    # reacts to the old s1=1; reacting to s1'=2 would force s2'=2.
    params = ModelParams(Model.AGGRESSION, 1.0, 1.0)
    n = 50_000
    freq = estimate_distribution((1, 0), params, 1, n, master_seed=7)
    p = 3 / 16
    sigma = np.sqrt(p * (1 - p) / n)
    assert abs(freq[encode((2, 1))] - p) <= 3 * sigma


def test_trajectory_is_reproducible():
    t1 = sample_trajectory((1, 0), AGG, 50, seed=42)
    t2 = sample_trajectory((1, 0), AGG, 50, seed=42)
    assert t1.states == t2.states
    t3 = sample_trajectory((1, 0), AGG, 50, seed=43)
    assert t3.states != t1.states


def test_trajectory_basics():
    assert sample_trajectory((1, 0), AGG, 0, seed=1).states == ((1, 0),)
    trajectory = sample_trajectory((1, 0), AGG, 40, seed=5)
    assert trajectory.states[0] == (1, 0)
    kernel = build_couple_kernel(AGG)
    for x, y in zip(trajectory.states, trajectory.states[1:]):
        assert kernel.matrix[encode(x), encode(y)] > 0


def test_trajectory_stays_after_absorption():
    absorbing = {(0, 0), (2, 2), (2, -1), (-1, 2)}
    for seed in range(10):
        states = sample_trajectory((1, 0), AGG, 60, seed=seed).states
        hit = None
        for k, state in enumerate(states):
            if state in absorbing:
                hit = k
                break
        assert hit is not None  # 60 steps is plenty at a=0.3
        assert all(state == states[hit] for state in states[hit:])


def test_reference_path_has_positive_probability():
    kernel = build_couple_kernel(AGG)
    path = [(1, 0), (1, -1), (2, 1), (2, -1), (2, -1)]
    for x, y in zip(path, path[1:]):
        assert kernel.matrix[encode(x), encode(y)] > 0


def test_estimate_matches_sequential_sampling_exactly():
    params = ModelParams(Model.SUPPORT, 0.35, 0.62)
    n, steps, master = 300, 6, 99
    counts = np.zeros(16)
    for i in range(n):
        trajectory = sample_trajectory((1, 0), params, steps, derive_seed(master, i))
        counts[encode(trajectory.states[-1])] += 1
    assert np.array_equal(counts / n, estimate_distribution((1, 0), params, steps, n, master))


def test_estimate_distribution_properties():
    calm = ModelParams(Model.AGGRESSION, 0.0, 0.0)
    freq = estimate_distribution((1, 0), calm, 10, 500, master_seed=1)
    assert freq[encode((0, 0))] == 1.0
    freq = estimate_distribution((1, 0), AGG, 5, 10_000, master_seed=2)
    assert freq.sum() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        estimate_distribution((1, 0), AGG, 5, 0, master_seed=2)


def test_estimate_agrees_with_exact_evolution():
    params = ModelParams(Model.AGGRESSION, 0.3, 0.3)
    kernel = build_couple_kernel(params)
    exact = evolve(delta_distribution((1, 0)), kernel, 5)
    freq = estimate_distribution((1, 0), params, 5, 100_000, master_seed=31)
    assert 0.5 * np.abs(freq - exact).sum() < 0.01


def test_format_trajectory_lines():
    trajectory = sample_trajectory((1, 0), ModelParams(Model.AGGRESSION, 0.0, 0.0), 2, seed=0)
    assert format_trajectory(trajectory) == [
        "t=0, s1=1 s2=0",
        "t=1, s1=-1 s2=-1",
        "t=2, s1=0 s2=0",
    ]
