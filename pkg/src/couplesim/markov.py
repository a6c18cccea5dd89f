"""Exact evolution of the 16-component couple distribution."""

from __future__ import annotations

import numpy as np

from .kernels import CoupleKernel
from .states import CoupleState, encode


def delta_distribution(state: CoupleState) -> np.ndarray:
    """Unit mass on one couple state."""
    dist = np.zeros(16)
    dist[encode(state)] = 1.0
    return dist


def step(dist: np.ndarray, kernel: CoupleKernel) -> np.ndarray:
    """One application of the transition matrix: p'(y) = sum_x M[x,y] p(x)."""
    return dist @ kernel.matrix


def evolve(
    dist: np.ndarray,
    kernel: CoupleKernel,
    steps: int,
    convergence_tol: float | None = None,
) -> np.ndarray:
    """Apply `step` `steps` times; steps=0 returns the input unchanged.

    No per-step renormalization is performed, so numerical drift stays
    visible. With convergence_tol set, iteration stops early once the L1
    change of one step falls below it.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    current = np.array(dist, dtype=float)
    for _ in range(steps):
        nxt = current @ kernel.matrix
        if convergence_tol is not None and np.abs(nxt - current).sum() < convergence_tol:
            return nxt
        current = nxt
    return current


def evolve_trace(dist: np.ndarray, kernel: CoupleKernel, steps: int) -> np.ndarray:
    """(steps+1) x 16 array of the distribution at t = 0..steps."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    trace = np.empty((steps + 1, 16))
    trace[0] = dist
    for t in range(steps):
        trace[t + 1] = trace[t] @ kernel.matrix
    return trace
