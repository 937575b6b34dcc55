"""Simulation of censored competing-risks data and a nonparametric baseline.

Sampling draws ``(T, J)`` from ``P`` and ``C`` from ``G`` by inverse CDF on
the time-major flattened categorical (tail last). Observation ``i`` of a
dataset uses stream values ``2i + 1`` and ``2i + 2`` of the counter RNG, so
any observation can be regenerated on its own and datasets of different size
from one seed share a prefix.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import (
    CensoringDistribution,
    CompetingRisksDistribution,
    Dataset,
    JointOutcomeDistribution,
    Observation,
    check_compatible,
    make_distribution,
    require_nonempty,
)
from .errors import CRScoreError
from .rng import check_seed


@dataclass(frozen=True)
class SimConfig:
    n: int
    seed: int
    P: CompetingRisksDistribution
    G: CensoringDistribution

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise CRScoreError(f"sample count must be a positive integer, got {self.n!r}")
        check_seed(self.seed)
        check_compatible(self.P, self.G)


def _inverse_cdf_table(probs: np.ndarray) -> np.ndarray:
    cum = np.cumsum(probs)
    # rounding can leave cum[-1] < 1; the last supported cell absorbs the rest
    last = int(np.flatnonzero(probs > 0)[-1])
    cum[last:] = np.inf
    return cum


def _tables(P: CompetingRisksDistribution, G: CensoringDistribution):
    event = _inverse_cdf_table(np.append(P.mass.T.ravel(), P.tail))
    censor = _inverse_cdf_table(np.asarray(G.mass))
    return event, censor


def sample_outcome(P: CompetingRisksDistribution, G: CensoringDistribution,
                   seed: int, index: int = 0) -> Observation:
    """The observation at position ``index`` of the stream for ``seed``."""
    check_compatible(P, G)
    seed = check_seed(seed)
    if index < 0:
        raise CRScoreError("stream index must be non-negative")
    event, censor = _tables(P, G)
    y, cause = kernels.draw_observations(seed, index, 1, event, censor, P.num_causes)
    return Observation(int(y[0]), int(cause[0]))


def simulate_dataset(config: SimConfig) -> Dataset:
    event, censor = _tables(config.P, config.G)
    y, cause = kernels.draw_observations(check_seed(config.seed), 0, int(config.n),
                                         event, censor, config.P.num_causes)
    return Dataset(config.P.grid, config.P.num_causes, y, cause)


def simulate(P, G, n: int, seed: int) -> Dataset:
    return simulate_dataset(SimConfig(n, seed, P, G))


def outcome_counts(data: Dataset) -> np.ndarray:
    """Counts shaped ``(M + 1, t_max)``; row 0 is censoring."""
    return kernels.count_outcomes(data.y, data.cause, data.grid.t_max, data.num_causes)


def empirical_joint(data: Dataset) -> JointOutcomeDistribution:
    require_nonempty(data)
    return JointOutcomeDistribution(data.grid, data.num_causes, outcome_counts(data) / len(data))


def aalen_johansen(data: Dataset, name: str | None = None) -> CompetingRisksDistribution:
    """Discrete-time Aalen-Johansen estimate of the sub-distribution masses.

    Cause-specific hazards ``d_j(t) / n(t)`` are combined with the
    product-limit survival ``S``; ``f_j(t) = S(t - 1) h_j(t)`` and the mass
    left at the horizon, ``S(t_max)``, becomes the tail. Times nobody is at
    risk for get zero hazard.
    """
    require_nonempty(data)
    counts = outcome_counts(data)
    T = data.grid.t_max
    per_time = counts.sum(axis=0)
    at_risk = len(data) - np.concatenate(([0], np.cumsum(per_time)[:-1]))
    events = counts[1:]
    total_events = events.sum(axis=0)
    safe = np.where(at_risk > 0, at_risk, 1)
    hazard = np.where(at_risk > 0, events / safe, 0.0)
    step = np.where(at_risk > 0, (at_risk - total_events) / safe, 1.0)
    surv = np.cumprod(step)
    surv_before = np.concatenate(([1.0], surv[:-1]))
    mass = surv_before * hazard
    tail = float(surv[T - 1])
    return make_distribution(data.grid, data.num_causes, mass, tail, name=name)
