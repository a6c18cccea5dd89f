import numpy as np
import pytest

from couplesim import (
    Engine,
    Scenario,
    SweepSpec,
    compare_grids,
    run_sweep,
)


def small(scenario, **kw):
    defaults = dict(resolution=6, master_seed=3)
    defaults.update(kw)
    return SweepSpec(scenario=scenario, **defaults)


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(scenario=Scenario.MODEL1_PLAIN, resolution=1)
    with pytest.raises(ValueError):
        SweepSpec(scenario=Scenario.MODEL1_PLAIN, resolution=301)
    with pytest.raises(ValueError):
        SweepSpec(scenario=Scenario.MODEL1_PLAIN, runs_per_cell=0)
    with pytest.raises(ValueError):
        SweepSpec(scenario=Scenario.MODEL1_PLAIN, vc=2.0)


def test_grid_axis_includes_both_endpoints():
    spec = small(Scenario.MODEL1_PLAIN, resolution=11)
    axis = spec.grid
    assert axis[0] == 0.0
    assert axis[-1] == 1.0
    assert len(axis) == 11
    assert np.allclose(np.diff(axis), 0.1)


def test_effective_runs_logic():
    sc = Scenario.MODEL1_SC_BLIND
    assert SweepSpec(scenario=sc).effective_runs == 1  # exact engine: one run suffices
    assert SweepSpec(scenario=sc, engine=Engine.MONTE_CARLO).effective_runs == 20
    assert SweepSpec(scenario=sc, engine=Engine.MONTE_CARLO, runs_per_cell=5).effective_runs == 5
    plain = Scenario.MODEL1_PLAIN
    assert SweepSpec(scenario=plain, engine=Engine.MONTE_CARLO).effective_runs == 1


def test_plain_sweep_corners():
    grid = run_sweep(small(Scenario.MODEL1_PLAIN))
    assert grid.fields["normal"][0, 0] == 1.0
    assert grid.fields["separation"][-1, -1] == pytest.approx(1.0, abs=1e-9)
    # high a1 / low a2 puts partner 1 in charge
    assert grid.fields["male_violence"][4, 1] == max(
        grid.fields[name][4, 1] for name in grid.spec.dominance_fields
    )


def test_support_plain_sweep_fields():
    grid = run_sweep(small(Scenario.MODEL2_PLAIN))
    assert set(grid.fields) == {
        "normal",
        "threshold",
        "recovering",
        "violence_cycle",
        "mutual_violence",
        "separation",
        "v1",
        "v2",
    }
    assert grid.fields["normal"][-1, -1] > 0.5


def test_sweep_is_deterministic_across_worker_counts():
    spec = small(Scenario.MODEL1_SC_GENDER, resolution=7)
    serial = run_sweep(spec, workers=1)
    parallel = run_sweep(spec, workers=3)
    for name in spec.field_names:
        assert np.array_equal(serial.fields[name], parallel.fields[name])


def test_monte_carlo_sweep_is_deterministic_across_worker_counts():
    spec = small(
        Scenario.MODEL2_PLAIN,
        resolution=5,
        engine=Engine.MONTE_CARLO,
        ensemble_size=200,
        runs_per_cell=3,
    )
    serial = run_sweep(spec, workers=1)
    parallel = run_sweep(spec, workers=4)
    for name in spec.field_names:
        assert np.array_equal(serial.fields[name], parallel.fields[name])
    rerun = run_sweep(spec, workers=2)
    for name in spec.field_names:
        assert np.array_equal(serial.fields[name], rerun.fields[name])


def test_transpose_symmetry_with_swapped_start():
    spec = small(Scenario.MODEL1_PLAIN, resolution=7)
    forward = run_sweep(spec)
    swapped = run_sweep(small(Scenario.MODEL1_PLAIN, resolution=7, start=(0, 1)))
    pairs = {
        "normal": "normal",
        "separation": "separation",
        "male_violence": "female_violence",
        "female_violence": "male_violence",
        "v1": "v2",
        "v2": "v1",
    }
    for name, mirror in pairs.items():
        assert np.abs(forward.fields[name] - swapped.fields[mirror].T).max() < 1e-12


def test_compare_grids():
    spec = small(Scenario.MODEL1_PLAIN)
    grid = run_sweep(spec)
    same = compare_grids(grid, grid, "normal")
    assert same.l1_difference == 0.0
    assert same.cells_dominant_in_1 == same.cells_dominant_in_2
    other = run_sweep(small(Scenario.MODEL1_SC_BLIND))
    diff = compare_grids(grid, other, "separation")
    assert diff.l1_difference > 0
    with pytest.raises(ValueError):
        compare_grids(grid, run_sweep(small(Scenario.MODEL1_PLAIN, resolution=5)), "normal")
    with pytest.raises(ValueError):
        compare_grids(grid, run_sweep(small(Scenario.MODEL2_PLAIN)), "normal")
    with pytest.raises(ValueError):
        compare_grids(grid, grid, "no_such_field")


def test_dominance_counts_cover_grid():
    grid = run_sweep(small(Scenario.MODEL1_PLAIN))
    counts = grid.dominance_counts()
    assert sum(counts.values()) == 36
    assert set(counts) == set(grid.spec.dominance_fields)
