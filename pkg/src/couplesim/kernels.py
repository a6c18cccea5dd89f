"""Transition kernels for both couple models.

The individual tables give tau(s_next | s_self, s_partner) as an affine
function of the control parameter: every entry is const + slope * p.
That structure is exploited to build kernels as two small constant
tensors plus a scalar multiply, and it guarantees each row sums to 1
for any parameter value.

A couple kernel is the 16x16 product
    M[(s1,s2) -> (s1',s2')] = tau(s1' | s1, s2; p1) * tau(s2' | s2, s1; p2),
i.e. both partners update in parallel from the old pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .states import (
    STATES,
    CoupleState,
    Model,
    ModelParams,
    validate_param,
    validate_state,
)

# Entries as {(s_self, s_partner): {s_next: (const, slope)}}; rows listed in
# self-state order -1, 0, 1, 2. Missing next-states have probability 0.

# Aggression-driven table (parameter a).
_TAU_AGGRESSION = {
    (-1, -1): {0: (1.0, 0.0)},
    (-1, 0): {0: (1.0, 0.0)},
    (-1, 1): {-1: (1.0, -1.0), 1: (0.0, 1.0)},
    (-1, 2): {-1: (1.0, 0.0)},
    (0, -1): {0: (1.0, 0.0)},
    (0, 0): {0: (1.0, 0.0)},
    (0, 1): {-1: (1.0, -1.0), 1: (0.0, 0.25), 2: (0.0, 0.75)},
    (0, 2): {-1: (1.0, -1.0), 2: (0.0, 1.0)},
    (1, -1): {-1: (1.0, -1.0), 2: (0.0, 1.0)},
    (1, 0): {-1: (1.0, -1.0), 1: (0.0, 0.25), 2: (0.0, 0.75)},
    (1, 1): {-1: (1.0, -1.0), 2: (0.0, 1.0)},
    (1, 2): {-1: (1.0, -1.0), 2: (0.0, 1.0)},
    (2, -1): {2: (1.0, 0.0)},
    (2, 0): {-1: (1.0, -1.0), 2: (0.0, 1.0)},
    (2, 1): {-1: (1.0, -1.0), 2: (0.0, 1.0)},
    (2, 2): {2: (1.0, 0.0)},
}

# Support-driven table (parameter s).
_TAU_SUPPORT = {
    (-1, -1): {0: (1.0, 0.0)},
    (-1, 0): {0: (1.0, 0.0)},
    (-1, 1): {-1: (1.0, 0.0)},
    (-1, 2): {-1: (1.0, 0.0)},
    (0, -1): {0: (1.0, 0.0)},
    (0, 0): {0: (0.0, 1.0), 1: (1.0, -1.0)},
    (0, 1): {0: (0.0, 1.0), 1: (1.0, -1.0)},
    (0, 2): {0: (1.0, 0.0)},
    (1, -1): {-1: (0.5, 0.0), 0: (0.5, 0.0)},
    (1, 0): {-1: (0.0, 1.0), 1: (1.0, -1.0)},
    (1, 1): {-1: (0.0, 1.0), 2: (1.0, -1.0)},
    (1, 2): {1: (1.0, 0.0)},
    (2, -1): {-1: (1.0, 0.0)},
    (2, 0): {0: (1.0, 0.0)},
    (2, 1): {2: (1.0, 0.0)},
    (2, 2): {0: (0.0, 1.0), 2: (1.0, -1.0)},
}

_TABLES = {Model.AGGRESSION: _TAU_AGGRESSION, Model.SUPPORT: _TAU_SUPPORT}


def _affine_tensors(model: Model) -> tuple[np.ndarray, np.ndarray]:
    """Constant and slope tensors, indexed [self+1, partner+1, next+1]."""
    const = np.zeros((4, 4, 4))
    slope = np.zeros((4, 4, 4))
    for (s, sp), row in _TABLES[model].items():
        for nxt, (c, m) in row.items():
            const[s + 1, sp + 1, nxt + 1] = c
            slope[s + 1, sp + 1, nxt + 1] = m
    const.setflags(write=False)
    slope.setflags(write=False)
    return const, slope


_AFFINE = {m: _affine_tensors(m) for m in Model}


def tau(model: Model, s_next: int, s_self: int, s_partner: int, param: float) -> float:
    """One entry of the individual transition table."""
    validate_state(s_next)
    validate_state(s_self)
    validate_state(s_partner)
    validate_param(param)
    const, slope = _AFFINE[model]
    return float(const[s_self + 1, s_partner + 1, s_next + 1]
                 + slope[s_self + 1, s_partner + 1, s_next + 1] * param)


def tau1(s_next: int, s_self: int, s_partner: int, a: float) -> float:
    """Aggression-model entry tau(s_next | s_self, s_partner; a)."""
    return tau(Model.AGGRESSION, s_next, s_self, s_partner, a)


def tau3(s_next: int, s_self: int, s_partner: int, supp: float) -> float:
    """Support-model entry tau3(s_next | s_self, s_partner; s)."""
    return tau(Model.SUPPORT, s_next, s_self, s_partner, supp)


@lru_cache(maxsize=512)
def individual_kernel(model: Model, param: float) -> np.ndarray:
    """4x4x4 table K[self+1, partner+1, next+1]; rows sum to 1."""
    validate_param(param)
    const, slope = _AFFINE[model]
    kernel = const + slope * param
    kernel.setflags(write=False)
    return kernel


@dataclass(frozen=True)
class CoupleKernel:
    """Immutable 16x16 row-stochastic transition matrix for the pair."""

    params: ModelParams
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.matrix.shape != (16, 16):
            raise ValueError(f"couple kernel must be 16x16, got {self.matrix.shape}")
        self.matrix.setflags(write=False)


def build_couple_kernel(params: ModelParams) -> CoupleKernel:
    """Product kernel: partner 1 sees partner 2's old state and vice versa."""
    k1 = individual_kernel(params.model, params.p1)
    k2 = individual_kernel(params.model, params.p2)
    matrix = np.einsum("abi,baj->abij", k1, k2).reshape(16, 16)
    return CoupleKernel(params=params, matrix=matrix)


def absorbing_states(kernel: CoupleKernel, tol: float = 1e-12) -> set[CoupleState]:
    """States whose self-transition probability equals 1.

    This reads the matrix literally. The support model's two unreachable
    states (2,1) and (1,2) hold themselves with probability 1 and are
    therefore reported, even though no dynamics started elsewhere can
    ever enter them (see garden_of_eden_states).
    """
    diag = np.diag(kernel.matrix)
    return {_state(i) for i in range(16) if diag[i] >= 1.0 - tol}


def garden_of_eden_states(
    kernel: CoupleKernel,
    exclude_self_loops: bool = False,
    tol: float = 0.0,
) -> set[CoupleState]:
    """States with no incoming transition from any other state.

    Such states can only ever appear as initial conditions. Self-loops do
    not count as incoming transitions; with exclude_self_loops the states
    that do hold a self-loop are additionally dropped from the report.
    """
    matrix = kernel.matrix
    found = set()
    for j in range(16):
        column = matrix[:, j].copy()
        self_prob = column[j]
        column[j] = 0.0
        if column.max() <= tol:
            if exclude_self_loops and self_prob > tol:
                continue
            found.add(_state(j))
    return found


def _state(index: int) -> CoupleState:
    return (index // 4 - 1, index % 4 - 1)


def iter_individual_entries(
    model: Model, param: float
) -> Iterator[tuple[int, int, int, float]]:
    """Nonzero (s_self, s_partner, s_next, probability) rows for audits."""
    kernel = individual_kernel(model, param)
    for s in STATES:
        for sp in STATES:
            for nxt in STATES:
                p = kernel[s + 1, sp + 1, nxt + 1]
                if p != 0.0:
                    yield s, sp, nxt, float(p)


def iter_couple_entries(
    kernel: CoupleKernel,
) -> Iterator[tuple[int, int, int, int, float]]:
    """Nonzero (s1, s2, s1_next, s2_next, probability) rows for audits."""
    for x in range(16):
        for y in range(16):
            p = kernel.matrix[x, y]
            if p != 0.0:
                s1, s2 = _state(x)
                t1, t2 = _state(y)
                yield s1, s2, t1, t2, float(p)
