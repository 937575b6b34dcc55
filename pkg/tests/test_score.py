import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crscore import CauseOutOfRange, EmptyDataset, GridMismatch, Observation, log_score, mean_score
from crscore.core import Dataset
from crscore.score import observation_scores

import oracles
from conftest import random_distribution


@pytest.mark.parametrize("obs,expected", [
    (Observation(2, 1), 1.2039728043259361),
    (Observation(1, 0), 0.35667494393873245),
    (Observation(1, 2), 2.302585092994046),
])
def test_fixture_scores(truth, obs, expected):
    assert log_score(obs, truth) == pytest.approx(expected, abs=1e-12)


def test_point_mass(point_mass):
    assert log_score(Observation(1, 1), point_mass) == 0.0
    assert log_score(Observation(1, 0), point_mass) == math.inf


def test_clamp(point_mass):
    assert log_score(Observation(1, 0), point_mass, clamp=1e-6) == pytest.approx(13.815510557964274)
    with pytest.raises(ValueError):
        log_score(Observation(1, 0), point_mass, clamp=0.0)


def test_errors(truth):
    with pytest.raises(GridMismatch):
        log_score(Observation(3, 1), truth)
    with pytest.raises(CauseOutOfRange):
        log_score(Observation(1, 3), truth)


def test_mean_score(truth):
    data = Dataset(2, 2, [2, 1], [1, 0])
    assert mean_score(data, truth) == pytest.approx(0.7803238741323343, abs=1e-12)


def test_mean_of_copies(truth):
    data = Dataset(2, 2, [2] * 1000, [2] * 1000)
    assert mean_score(data, truth) == pytest.approx(log_score(Observation(2, 2), truth), rel=1e-15)


def test_mean_infinite_and_empty(point_mass):
    assert mean_score(Dataset(1, 1, [1, 1], [1, 0]), point_mass) == math.inf
    with pytest.raises(EmptyDataset):
        mean_score(Dataset(1, 1, [], []), point_mass)


def test_mean_grid_mismatch(truth):
    with pytest.raises(GridMismatch):
        mean_score(Dataset(3, 2, [3], [0]), truth)


def test_batch_agrees_with_single(truth):
    data = Dataset(2, 2, [1, 1, 1, 2, 2, 2], [0, 1, 2, 0, 1, 2])
    batch = observation_scores(data, truth)
    assert batch.tolist() == [log_score(o, truth) for o in data]


def test_mean_accumulates_in_input_order():
    # 1e16 + 1 + -1e16 loses the 1 without compensation
    from crscore.kernels import neumaier_sum
    assert neumaier_sum(np.array([1e16, 1.0, -1e16])) == 1.0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_nonnegative(T, M, seed):
    rng = np.random.default_rng(seed)
    Q = random_distribution(rng, T, M, alpha=0.3)
    for y in range(1, T + 1):
        for c in range(M + 1):
            assert log_score(Observation(y, c), Q) >= 0.0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_single_risk_reduction(T, seed):
    rng = np.random.default_rng(seed)
    Q = random_distribution(rng, T, 1)
    f = Q.mass[0].tolist()
    for y in range(1, T + 1):
        for delta in (0, 1):
            expected = oracles.survival_log_score(y, delta, f)
            assert abs(log_score(Observation(y, delta), Q) - expected) <= 1e-12
