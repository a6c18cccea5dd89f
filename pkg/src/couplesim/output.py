"""File formats: CSV (header row, '.' decimals, LF endings) and binary PGM.

Heatmap orientation: column = p1 from 0 (left) to 1 (right), row = p2 from
1 (top) to 0 (bottom), so the image reads like a phase diagram with p2 on
the upward axis. Values are clipped to [0, 1] and mapped 0 -> black,
1 -> white.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .feedback import FeedbackTrace
from .montecarlo import Trajectory, format_trajectory
from .states import COUPLE_STATES


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path: Path | str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def write_matrix_csv(path: Path | str, values: np.ndarray, axis: np.ndarray) -> None:
    """Matrix over the parameter plane: first column p1, one column per p2."""
    header = ["p1"] + [_fmt(float(p2)) for p2 in axis]
    rows = (
        [float(axis[i])] + [float(v) for v in values[i]] for i in range(len(axis))
    )
    write_csv(path, header, rows)


def write_long_csv(path: Path | str, fields: Mapping[str, np.ndarray], axis: np.ndarray) -> None:
    """Long format: one (p1, p2, field, value) row per cell and field."""
    def rows():
        for i, p1 in enumerate(axis):
            for j, p2 in enumerate(axis):
                for name, values in fields.items():
                    yield [float(p1), float(p2), name, float(values[i, j])]

    write_csv(path, ["p1", "p2", "field", "value"], rows())


def write_pgm(path: Path | str, values: np.ndarray) -> None:
    """Binary P5 heatmap, maxval 255; see module docstring for orientation."""
    clipped = np.clip(values, 0.0, 1.0)
    image = np.rint(clipped.T[::-1] * 255.0).astype(np.uint8)
    height, width = image.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + image.tobytes())


def write_trajectory_text(path: Path | str, trajectory: Trajectory) -> None:
    lines = format_trajectory(trajectory)
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def write_trajectory_csv(path: Path | str, trajectory: Trajectory) -> None:
    rows = ([t, s1, s2] for t, (s1, s2) in enumerate(trajectory.states))
    write_csv(path, ["t", "s1", "s2"], rows)


def distribution_columns() -> list[str]:
    return [f"p_{s1}_{s2}" for s1, s2 in COUPLE_STATES]


def write_distribution_trace_csv(path: Path | str, trace: np.ndarray) -> None:
    """Rows (t, 16 probabilities) for a distribution trace."""
    header = ["t"] + distribution_columns()
    rows = ([t] + [float(p) for p in trace[t]] for t in range(trace.shape[0]))
    write_csv(path, header, rows)


def write_feedback_csv(path: Path | str, trace: FeedbackTrace) -> None:
    """Rows (turn, p1, p2, v1, v2, observable columns)."""
    obs_names = list(trace[0].observables.as_dict())
    header = ["turn", "p1", "p2", "v1", "v2"] + obs_names
    rows = (
        [rec.turn, rec.p1, rec.p2, rec.v1, rec.v2]
        + [rec.observables.as_dict()[name] for name in obs_names]
        for rec in trace
    )
    write_csv(path, header, rows)


def write_meta(path: Path | str, config: Mapping[str, object]) -> None:
    """Echo a resolved configuration as flat `key = value` lines."""
    lines = [f"{key} = {_fmt(value)}" for key, value in config.items()]
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))
