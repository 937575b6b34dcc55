"""Logarithmic scoring of discrete-time competing-risks forecasts under right censoring."""
from .core import (
    CensoringDistribution,
    CompetingRisksDistribution,
    Dataset,
    JointOutcomeDistribution,
    Observation,
    TimeGrid,
    cif,
    joint_pmf,
    make_censoring,
    make_distribution,
    overall_cdf,
)
from .errors import (
    CauseOutOfRange,
    CRScoreError,
    DimensionMismatch,
    EmptyDataset,
    GridMismatch,
    IndeterminateGap,
    IndexOutOfRange,
    NegativeMass,
    NotNormalized,
)
from .propriety import (
    CandidateResult,
    ProprietyReport,
    check_propriety,
    dirichlet_candidates,
    expected_score,
    kl_divergence,
    score_gap,
    structured_candidates,
)
from .score import log_score, mean_score, observation_scores
from .sim import SimConfig, aalen_johansen, empirical_joint, sample_outcome, simulate, simulate_dataset

__version__ = "0.1.0"
