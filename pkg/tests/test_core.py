import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crscore import (
    DimensionMismatch,
    GridMismatch,
    IndexOutOfRange,
    NegativeMass,
    NotNormalized,
    Observation,
    TimeGrid,
    cif,
    joint_pmf,
    make_censoring,
    make_distribution,
    overall_cdf,
)
from crscore.core import Dataset

import oracles
from conftest import as_lists, random_censoring, random_distribution


class TestMakeDistribution:
    def test_point_mass(self, point_mass):
        assert point_mass.mass.tolist() == [[1.0]]
        assert point_mass.tail == 0.0

    def test_fixture_kept_verbatim(self, truth):
        assert truth.mass.tolist() == [[0.2, 0.3], [0.1, 0.2]]
        assert truth.tail == 0.2

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            make_distribution(2, 1, [[0.6, 0.6]], 0.0)

    def test_within_tolerance_not_renormalized(self):
        d = make_distribution(1, 1, [[1.0 - 5e-10]], 0.0)
        assert d.mass[0, 0] == 1.0 - 5e-10

    def test_outside_tolerance(self):
        with pytest.raises(NotNormalized):
            make_distribution(1, 1, [[1.0 - 2e-9]], 0.0)

    def test_negative(self):
        with pytest.raises(NegativeMass):
            make_distribution(2, 1, [[1.1, -0.1]], 0.0)
        with pytest.raises(NegativeMass):
            make_distribution(1, 1, [[1.1]], -0.1)

    @pytest.mark.parametrize("mass", [[[1.0]], [[0.5, 0.5], [0.0, 0.0]], [0.5, 0.5]])
    def test_dimension_mismatch(self, mass):
        with pytest.raises(DimensionMismatch):
            make_distribution(2, 1, mass, 0.0)

    def test_immutable(self, truth):
        with pytest.raises(AttributeError):
            truth.tail = 0.1
        with pytest.raises(ValueError):
            truth.mass[0, 0] = 0.5

    def test_grid_validation(self):
        with pytest.raises(DimensionMismatch):
            TimeGrid(0)


@pytest.mark.parametrize("j,t,expected", [(1, 2, 0.5), (2, 1, 0.1), (1, 1, 0.2), (2, 2, 0.3)])
def test_cif(truth, j, t, expected):
    assert cif(truth, j, t) == pytest.approx(expected, abs=1e-15)


def test_cif_point_mass(point_mass):
    assert cif(point_mass, 1, 1) == 1.0


@pytest.mark.parametrize("j,t", [(0, 1), (3, 1), (1, 0), (1, 3)])
def test_cif_out_of_range(truth, j, t):
    with pytest.raises(IndexOutOfRange):
        cif(truth, j, t)


def test_overall_cdf(truth, point_mass):
    assert overall_cdf(truth, 1) == pytest.approx(0.3, abs=1e-15)
    assert overall_cdf(truth, 2) == pytest.approx(0.8, abs=1e-15)
    assert overall_cdf(point_mass, 1) == 1.0
    with pytest.raises(IndexOutOfRange):
        overall_cdf(truth, 3)


def test_censoring_validation():
    with pytest.raises(NotNormalized):
        make_censoring(2, [0.5, 0.6])
    with pytest.raises(NegativeMass):
        make_censoring(2, [1.5, -0.5])
    with pytest.raises(DimensionMismatch):
        make_censoring(2, [1.0])
    G = make_censoring(3, [0.2, 0.3, 0.5])
    assert G.at_least() == pytest.approx([1.0, 0.8, 0.5])


class TestObservation:
    def test_indicator_roundtrip(self):
        for cause in range(4):
            obs = Observation(2, cause)
            d = obs.deltas(3)
            assert sum(d) == obs.delta
            assert Observation.from_deltas(2, d) == obs

    def test_invalid(self):
        with pytest.raises(IndexOutOfRange):
            Observation(0, 1)
        with pytest.raises(ValueError):
            Observation(1, -1)
        with pytest.raises(ValueError):
            Observation.from_deltas(1, [1, 1])

    def test_dataset_bounds(self):
        with pytest.raises(GridMismatch):
            Dataset(2, 1, [3], [0])
        with pytest.raises(ValueError):
            Dataset(2, 1, [1], [2])
        data = Dataset.from_observations(2, 2, [Observation(1, 1), Observation(2, 0)])
        assert list(data) == [Observation(1, 1), Observation(2, 0)]
        assert data[1] == Observation(2, 0)


class TestJointPmf:
    def test_hand_fixture(self, truth, censoring):
        pmf = joint_pmf(truth, censoring).pmf
        expected = [[0.28, 0.12], [0.2, 0.18], [0.1, 0.12]]
        np.testing.assert_allclose(pmf, expected, rtol=0, atol=1e-15)
        assert pmf.sum() == pytest.approx(1.0, abs=1e-15)

    def test_point_masses(self, point_mass, point_censoring):
        assert joint_pmf(point_mass, point_censoring).pmf.tolist() == [[0.0], [1.0]]

    def test_grid_mismatch(self, truth, point_censoring):
        with pytest.raises(GridMismatch):
            joint_pmf(truth, point_censoring)

    def test_matches_generative_enumeration(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            T, M = rng.integers(1, 6), rng.integers(1, 4)
            Q = random_distribution(rng, T, M)
            G = random_censoring(rng, T, support=int(rng.integers(1, T + 1)))
            ref = oracles.generative_joint(*as_lists(Q), G.mass.tolist())
            pmf = joint_pmf(Q, G)
            for (y, c), p in ref.items():
                assert pmf.prob(y, c) == pytest.approx(float(p), abs=1e-15)


dims = st.tuples(st.integers(1, 6), st.integers(1, 3), st.integers(0, 2**32 - 1))


@settings(max_examples=200, deadline=None)
@given(dims)
def test_joint_normalization(params):
    T, M, seed = params
    rng = np.random.default_rng(seed)
    pmf = joint_pmf(random_distribution(rng, T, M), random_censoring(rng, T)).pmf
    assert (pmf >= 0).all()
    assert abs(pmf.sum() - 1.0) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(dims)
def test_marginal_consistency(params):
    T, M, seed = params
    rng = np.random.default_rng(seed)
    Q = random_distribution(rng, T, M)
    pmf = joint_pmf(Q, random_censoring(rng, T)).pmf
    assert (pmf[1:].sum(axis=1) <= Q.mass.sum(axis=1) + 1e-15).all()
    # censoring only at the horizon hides nothing before it
    admin = np.zeros(T)
    admin[-1] = 1.0
    full = joint_pmf(Q, make_censoring(T, admin)).pmf
    np.testing.assert_allclose(full[1:].sum(axis=1), Q.mass.sum(axis=1), rtol=0, atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(dims)
def test_cif_monotone_and_tail(params):
    T, M, seed = params
    Q = random_distribution(np.random.default_rng(seed), T, M)
    for j in range(1, M + 1):
        values = [cif(Q, j, t) for t in range(1, T + 1)]
        assert all(a <= b for a, b in zip(values, values[1:]))
    assert abs(overall_cdf(Q, T) + Q.tail - 1.0) <= 1e-12
