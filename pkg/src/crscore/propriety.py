"""Exact expected scores, KL divergence between outcome pmfs, and a propriety harness.

Two independent routes reach the same number. ``score_gap`` subtracts two
exact expected scores; ``kl_divergence`` works directly on the enumerated
joint pmfs. Agreement of the two is checked by :func:`check_propriety`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .core import (
    CensoringDistribution,
    CompetingRisksDistribution,
    JointOutcomeDistribution,
    check_compatible,
    joint_pmf,
    make_distribution,
)
from .errors import CRScoreError, IndeterminateGap
from .rng import CounterRNG
from .score import score_table

GAP_SLACK = 1e-12
IDENTITY_TOL = 1e-10
PI_EQUAL_TOL = 1e-12


def _weighted_sum(weights: np.ndarray, values: np.ndarray) -> float:
    """Sum of ``weights * values`` with ``0 * inf = 0``."""
    live = weights > 0
    terms = weights[live] * values[live]
    if np.isinf(terms).any():
        return math.inf
    return kernels.neumaier_sum(terms)


def expected_score(P: CompetingRisksDistribution, G: CensoringDistribution,
                   Q: CompetingRisksDistribution) -> float:
    """Exact expectation of Q's log score when data come from ``P`` censored by ``G``."""
    check_compatible(P, G, Q)
    pi = joint_pmf(P, G).pmf
    return _weighted_sum(pi.ravel(), score_table(Q).ravel())


def kl_divergence(pi_p: JointOutcomeDistribution, pi_q: JointOutcomeDistribution) -> float:
    """``sum p log(p / q)`` over the outcome space, in nats."""
    check_compatible(pi_p, pi_q)
    p = pi_p.pmf.ravel()
    q = pi_q.pmf.ravel()
    live = p > 0
    if np.any(q[live] == 0):
        return math.inf
    p, q = p[live], q[live]
    return kernels.neumaier_sum(p * np.log(p / q))


def score_gap(P: CompetingRisksDistribution, Q: CompetingRisksDistribution,
              G: CensoringDistribution) -> float:
    """Excess expected score of reporting ``Q`` when the truth is ``P``."""
    own = expected_score(P, G, P)
    other = expected_score(P, G, Q)
    if math.isinf(own):
        if math.isinf(other):
            raise IndeterminateGap("both expected scores are infinite")
        # unreachable for a valid P: every outcome P can produce has positive P-probability
        raise CRScoreError("truth has infinite expected score under itself")
    return other - own


@dataclass(frozen=True)
class CandidateResult:
    score_gap: float
    kl: float
    identity_residual: float
    pi_equal: bool
    name: str | None = None

    @property
    def ok(self) -> bool:
        if math.isfinite(self.score_gap) and self.score_gap < -GAP_SLACK:
            return False
        if not self.identity_residual <= IDENTITY_TOL:
            return False
        return not (self.pi_equal and self.score_gap > GAP_SLACK)


@dataclass(frozen=True)
class ProprietyReport:
    results: tuple[CandidateResult, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> bool:
        return all(r.ok for r in self.results)

    def __len__(self):
        return len(self.results)

    def __iter__(self):
        return iter(self.results)


def _residual(gap: float, kl: float) -> float:
    if math.isinf(gap) and math.isinf(kl):
        return 0.0
    if math.isinf(gap) or math.isinf(kl):
        return math.inf
    return abs(gap - kl)


def evaluate_candidate(P: CompetingRisksDistribution, G: CensoringDistribution,
                       Q: CompetingRisksDistribution,
                       pi_p: JointOutcomeDistribution | None = None) -> CandidateResult:
    pi_p = joint_pmf(P, G) if pi_p is None else pi_p
    pi_q = joint_pmf(Q, G)
    gap = score_gap(P, Q, G)
    kl = kl_divergence(pi_p, pi_q)
    pi_equal = bool(np.all(np.abs(pi_p.pmf - pi_q.pmf) <= PI_EQUAL_TOL))
    return CandidateResult(gap, kl, _residual(gap, kl), pi_equal, Q.name)


def check_propriety(P: CompetingRisksDistribution, G: CensoringDistribution,
                    candidates: Sequence[CompetingRisksDistribution]) -> ProprietyReport:
    """Certify, candidate by candidate, that no forecast beats the truth.

    Strictness is judged against the induced outcome pmf: a candidate whose
    pmf equals the truth's (``pi_equal``) must have zero gap, every other
    one a non-negative gap matching its KL divergence.
    """
    if not candidates:
        raise CRScoreError("at least one candidate is required")
    check_compatible(P, G, *candidates)
    pi_p = joint_pmf(P, G)
    return ProprietyReport(tuple(evaluate_candidate(P, G, Q, pi_p) for Q in candidates))


# -- candidate generation -------------------------------------------------

def _flat(P: CompetingRisksDistribution) -> np.ndarray:
    # time-major cells then tail, the same order the sampler uses
    return np.append(P.mass.T.ravel(), P.tail)


def _unflat(P: CompetingRisksDistribution, flat: np.ndarray, name: str) -> CompetingRisksDistribution:
    flat = np.maximum(flat, 0.0)
    flat = flat / flat.sum()
    mass = flat[:-1].reshape(P.grid.t_max, P.num_causes).T
    return make_distribution(P.grid, P.num_causes, mass, float(flat[-1]), name=name)


def dirichlet_candidates(P: CompetingRisksDistribution, count: int, seed: int,
                         min_weight: float = 0.01, max_weight: float = 0.5
                         ) -> list[CompetingRisksDistribution]:
    """Mixtures ``(1 - w) P + w D`` with ``D ~ Dirichlet(1, ..., 1)``.

    ``w`` is uniform on ``[min_weight, max_weight]``. Built from the counter
    RNG so the candidate set depends only on ``seed``.
    """
    rng = CounterRNG(seed)
    base = _flat(P)
    out = []
    for k in range(count):
        w = min_weight + (max_weight - min_weight) * rng.uniform()
        d = rng.dirichlet_flat(base.size)
        out.append(_unflat(P, (1.0 - w) * base + w * d, f"dirichlet-{k}"))
    return out


def structured_candidates(P: CompetingRisksDistribution, fraction: float = 0.5
                          ) -> list[CompetingRisksDistribution]:
    """Adversarial alternatives: cause swaps, time shifts, and tail transfers."""
    out = []
    M, T = P.num_causes, P.grid.t_max
    for a in range(M):
        for b in range(a + 1, M):
            mass = P.mass.copy()
            mass[[a, b]] = mass[[b, a]]
            out.append(make_distribution(P.grid, M, mass, P.tail, name=f"swap-{a + 1}-{b + 1}"))
    for j in range(M):
        for t in range(T - 1):
            mass = P.mass.copy()
            moved = fraction * mass[j, t]
            mass[j, t] -= moved
            mass[j, t + 1] += moved
            out.append(make_distribution(P.grid, M, mass, P.tail, name=f"shift-{j + 1}-{t + 1}"))
    for j in range(M):
        mass = P.mass.copy()
        moved = fraction * P.tail
        mass[j, T - 1] += moved
        out.append(make_distribution(P.grid, M, mass, P.tail - moved, name=f"tail-in-{j + 1}"))
        mass = P.mass.copy()
        moved = fraction * mass[j, T - 1]
        mass[j, T - 1] -= moved
        out.append(make_distribution(P.grid, M, mass, P.tail + moved, name=f"tail-out-{j + 1}"))
    return out
