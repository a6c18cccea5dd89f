"""Scalar measurements extracted from a couple distribution.

The support model's path weights follow the published formulas verbatim:
the recovering weight R subtracts P(-1,2) + P(2,-1) (mass passing through
the one-sided-violence states on its way back to calm) while the violence
cycle V adds the same two terms. The signed terms therefore cancel in
N + T + R + V + P(2,2), which equals 1 minus exactly that pass-through
mass once the unreachable states (2,1), (1,2) are empty. Likewise M and S
split P(2,2) by support factors and do not add up to it for interior
supports; both are reported as defined, without renormalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import STATES, encode


@dataclass(frozen=True)
class AbsorptionBasins:
    """Mass on the four absorbing states of the aggression model."""

    normal: float
    separation: float
    male_violence: float
    female_violence: float

    def as_dict(self) -> dict[str, float]:
        return {
            "normal": self.normal,
            "separation": self.separation,
            "male_violence": self.male_violence,
            "female_violence": self.female_violence,
        }


@dataclass(frozen=True)
class GenderViolence:
    """Per-partner violence exposure v1, v2."""

    v1: float
    v2: float


@dataclass(frozen=True)
class PathWeights:
    """Support-model path weights; recovering may be negative by design."""

    normal: float
    threshold: float
    recovering: float
    violence_cycle: float
    mutual_violence: float
    separation: float

    def as_dict(self) -> dict[str, float]:
        return {
            "normal": self.normal,
            "threshold": self.threshold,
            "recovering": self.recovering,
            "violence_cycle": self.violence_cycle,
            "mutual_violence": self.mutual_violence,
            "separation": self.separation,
        }


def _p(dist: np.ndarray, s1: int, s2: int) -> float:
    return float(dist[encode((s1, s2))])


def model1_basins(dist: np.ndarray) -> AbsorptionBasins:
    """Read the four absorbing-state components of a distribution."""
    return AbsorptionBasins(
        normal=_p(dist, 0, 0),
        separation=_p(dist, 2, 2),
        male_violence=_p(dist, 2, -1),
        female_violence=_p(dist, -1, 2),
    )


def gender_violence(dist: np.ndarray) -> GenderViolence:
    """v1 = P(2,-1) + P(2,2) and v2 = P(-1,2) + P(2,2)."""
    return GenderViolence(
        v1=_p(dist, 2, -1) + _p(dist, 2, 2),
        v2=_p(dist, -1, 2) + _p(dist, 2, 2),
    )


def violent_marginals(dist: np.ndarray) -> GenderViolence:
    """Probability that each partner is violent: the row/column-2 marginals."""
    return GenderViolence(
        v1=sum(_p(dist, 2, s2) for s2 in STATES),
        v2=sum(_p(dist, s1, 2) for s1 in STATES),
    )


def model2_observables(dist: np.ndarray, supp1: float, supp2: float) -> PathWeights:
    """Path weights of the support model at supports (supp1, supp2)."""
    p22 = _p(dist, 2, 2)
    return PathWeights(
        normal=_p(dist, 0, 0),
        threshold=_p(dist, 0, 1) + _p(dist, 1, 0) + _p(dist, 1, 1),
        recovering=(
            _p(dist, -1, 0)
            + _p(dist, 0, -1)
            + _p(dist, -1, 1)
            + _p(dist, 1, -1)
            + _p(dist, -1, -1)
            - (_p(dist, -1, 2) + _p(dist, 2, -1))
        ),
        violence_cycle=(
            _p(dist, -1, 2) + _p(dist, 2, -1) + _p(dist, 0, 2) + _p(dist, 2, 0)
        ),
        mutual_violence=p22 * (1.0 - supp1) * (1.0 - supp2),
        separation=p22 * supp1 * supp2,
    )
