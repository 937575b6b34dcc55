"""Logarithmic score for censored competing-risks observations.

A failure from cause ``j`` at time ``y`` scores ``-log f_j(y)``; an
observation censored at ``y`` scores ``-log(1 - F(y))``. Scores are in nats
and may be ``+inf`` when the forecast gave the outcome zero probability.
"""
from __future__ import annotations

import math

import numpy as np

from . import kernels
from .core import (
    CompetingRisksDistribution,
    Dataset,
    Observation,
    check_compatible,
    require_nonempty,
)
from .errors import CauseOutOfRange, CRScoreError, GridMismatch


def _check_clamp(clamp):
    if clamp is not None and not (0.0 < clamp <= 1.0):
        raise CRScoreError(f"clamp floor must lie in (0, 1], got {clamp!r}")


def _neg_log(p, clamp=None):
    if clamp is not None:
        p = np.maximum(p, clamp)
    with np.errstate(divide="ignore"):
        return -np.log(p)


def outcome_probabilities(Q: CompetingRisksDistribution) -> np.ndarray:
    """Forecast probability that the score reads for each ``(cause, y)`` outcome.

    Row 0 holds ``1 - F(y)`` and row ``j`` holds ``f_j(y)``.
    """
    probs = np.empty((Q.num_causes + 1, Q.grid.t_max))
    probs[0] = Q.survival_vector()
    probs[1:] = Q.mass
    return probs


def score_table(Q: CompetingRisksDistribution, clamp: float | None = None) -> np.ndarray:
    """Log score of every possible outcome, shaped like a joint pmf."""
    _check_clamp(clamp)
    return _neg_log(outcome_probabilities(Q), clamp)


def log_score(obs: Observation, Q: CompetingRisksDistribution, clamp: float | None = None) -> float:
    """Score a single observation against forecast ``Q``.

    With ``clamp`` set, probabilities below it are raised to it before the
    log, which keeps reports finite at the cost of propriety.
    """
    _check_clamp(clamp)
    if obs.y not in Q.grid:
        raise GridMismatch(f"observation time {obs.y} outside 1..{Q.grid.t_max}")
    if obs.cause > Q.num_causes:
        raise CauseOutOfRange(f"cause {obs.cause} outside 0..{Q.num_causes}")
    if obs.cause:
        p = float(Q.mass[obs.cause - 1, obs.y - 1])
    else:
        p = max(1.0 - float(Q.cdf_vector()[obs.y - 1]), 0.0)
    if clamp is not None:
        p = max(p, clamp)
    # np.log, not math.log, so single and batch scoring agree bit for bit
    return math.inf if p == 0.0 else -float(np.log(p))


def observation_scores(data: Dataset, Q: CompetingRisksDistribution,
                       clamp: float | None = None) -> np.ndarray:
    """Per-observation scores in input order."""
    check_compatible(data, Q)
    return score_table(Q, clamp)[data.cause, data.y - 1]


def mean_score(data: Dataset, Q: CompetingRisksDistribution, clamp: float | None = None) -> float:
    """Average score over a dataset.

    Uses Neumaier summation in input order so the result is reproducible
    bit for bit; any infinite term makes the mean infinite.
    """
    require_nonempty(data)
    scores = observation_scores(data, Q, clamp)
    if np.isinf(scores).any():
        return math.inf
    return kernels.neumaier_sum(scores) / len(scores)
