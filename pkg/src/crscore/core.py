"""Discrete-time competing-risks distributions, censoring, and observations.

Times are 1-based: a grid with ``t_max = 3`` covers times 1, 2, 3. Array
storage is 0-based, so ``mass[j - 1, t - 1]`` holds ``f_j(t)``.

The joint pmf of the observable pair (Y, cause) under a forecast ``Q`` and
independent censoring ``G`` is

    pi(y, j) = f_j(y) * G(C >= y)          for causes j >= 1
    pi(y, 0) = (1 - F(y)) * G(C = y)       censored at y

Ties ``T == C`` count as observed failures.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CauseOutOfRange,
    DimensionMismatch,
    EmptyDataset,
    GridMismatch,
    IndexOutOfRange,
    NegativeMass,
    NotNormalized,
)

NORMALIZATION_TOL = 1e-9


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeGrid:
    """Discrete times ``1..t_max``."""

    t_max: int

    def __post_init__(self):
        if isinstance(self.t_max, bool) or int(self.t_max) != self.t_max or self.t_max < 1:
            raise DimensionMismatch(f"t_max must be a positive integer, got {self.t_max!r}")
        object.__setattr__(self, "t_max", int(self.t_max))

    def __contains__(self, t) -> bool:
        return 1 <= t <= self.t_max


def _as_grid(grid) -> TimeGrid:
    return grid if isinstance(grid, TimeGrid) else TimeGrid(grid)


class CompetingRisksDistribution:
    """Sub-distribution masses ``f_j(t)`` for M causes plus a beyond-horizon tail.

    Use :func:`make_distribution` to construct one. Instances are immutable.
    """

    __slots__ = ("grid", "num_causes", "mass", "tail", "name")

    def __init__(self, grid: TimeGrid, num_causes: int, mass: np.ndarray, tail: float,
                 name: str | None = None):
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "num_causes", num_causes)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("CompetingRisksDistribution is immutable")

    def __repr__(self):
        return (f"CompetingRisksDistribution(t_max={self.grid.t_max}, "
                f"num_causes={self.num_causes}, mass={self.mass.tolist()!r}, tail={self.tail!r})")

    def __eq__(self, other):
        if not isinstance(other, CompetingRisksDistribution):
            return NotImplemented
        return (self.grid == other.grid and self.num_causes == other.num_causes
                and np.array_equal(self.mass, other.mass) and self.tail == other.tail)

    __hash__ = None

    def cdf_vector(self) -> np.ndarray:
        """``F(t)`` for t = 1..t_max (cumulative over time of the cause sums)."""
        return np.cumsum(self.mass.sum(axis=0))

    def survival_vector(self) -> np.ndarray:
        """``1 - F(t)`` for t = 1..t_max, floored at 0 against rounding."""
        return np.maximum(1.0 - self.cdf_vector(), 0.0)

    def with_name(self, name: str | None) -> "CompetingRisksDistribution":
        return CompetingRisksDistribution(self.grid, self.num_causes, self.mass, self.tail, name)


def make_distribution(grid, num_causes: int, mass, tail: float,
                      name: str | None = None) -> CompetingRisksDistribution:
    """Validate and freeze a competing-risks distribution.

    Values are stored verbatim; a total within 1e-9 of one is accepted
    without renormalizing.

    Raises
    ------
    DimensionMismatch
        ``mass`` is not ``num_causes x t_max``.
    NegativeMass
        Any mass or the tail is negative (or not finite).
    NotNormalized
        ``sum(mass) + tail`` differs from one by more than 1e-9.
    """
    grid = _as_grid(grid)
    if isinstance(num_causes, bool) or int(num_causes) != num_causes or num_causes < 1:
        raise DimensionMismatch(f"number of causes must be a positive integer, got {num_causes!r}")
    num_causes = int(num_causes)
    try:
        arr = np.array(mass, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise DimensionMismatch(f"mass is not a rectangular numeric matrix: {exc}") from None
    if arr.shape != (num_causes, grid.t_max):
        raise DimensionMismatch(
            f"mass has shape {arr.shape}, expected ({num_causes}, {grid.t_max})")
    tail = float(tail)
    if not (np.all(np.isfinite(arr)) and np.isfinite(tail)):
        raise NegativeMass("masses must be finite")
    if np.any(arr < 0) or tail < 0:
        raise NegativeMass("masses and tail must be non-negative")
    if np.any(arr > 1) or tail > 1:
        raise NotNormalized("individual masses must not exceed 1")
    total = float(arr.sum()) + tail
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"masses plus tail sum to {total!r}, not 1")
    arr.setflags(write=False)
    return CompetingRisksDistribution(grid, num_causes, arr, tail, name)


def _check_cause(dist: CompetingRisksDistribution, j: int):
    if not 1 <= j <= dist.num_causes:
        raise IndexOutOfRange(f"cause {j} outside 1..{dist.num_causes}")


def _check_time(grid: TimeGrid, t: int):
    if t not in grid:
        raise IndexOutOfRange(f"time {t} outside 1..{grid.t_max}")


def cif(dist: CompetingRisksDistribution, j: int, t: int) -> float:
    """Cumulative incidence ``F_j(t) = Q(T <= t, J = j)``."""
    _check_cause(dist, j)
    _check_time(dist.grid, t)
    return float(np.cumsum(dist.mass[j - 1])[t - 1])


def overall_cdf(dist: CompetingRisksDistribution, t: int) -> float:
    """``F(t) = Q(T <= t)`` summed over causes."""
    _check_time(dist.grid, t)
    return float(dist.cdf_vector()[t - 1])


class CensoringDistribution:
    """pmf of the censoring time ``C``, fully supported on the grid."""

    __slots__ = ("grid", "mass", "name")

    def __init__(self, grid: TimeGrid, mass: np.ndarray, name: str | None = None):
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("CensoringDistribution is immutable")

    def __repr__(self):
        return f"CensoringDistribution(t_max={self.grid.t_max}, mass={self.mass.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, CensoringDistribution):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.mass, other.mass)

    __hash__ = None

    def at_least(self) -> np.ndarray:
        """``G(C >= y)`` for y = 1..t_max; the first entry is exactly 1."""
        out = np.empty_like(self.mass)
        out[0] = 1.0
        # 1 - running sum keeps G(C >= y) consistent with the pmf seen by joint_pmf
        out[1:] = np.maximum(1.0 - np.cumsum(self.mass)[:-1], 0.0)
        return out


def make_censoring(grid, mass, name: str | None = None) -> CensoringDistribution:
    grid = _as_grid(grid)
    try:
        arr = np.array(mass, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise DimensionMismatch(f"censoring mass is not a numeric vector: {exc}") from None
    if arr.shape != (grid.t_max,):
        raise DimensionMismatch(f"censoring mass has shape {arr.shape}, expected ({grid.t_max},)")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise NegativeMass("censoring masses must be finite and non-negative")
    if np.any(arr > 1):
        raise NotNormalized("individual censoring masses must not exceed 1")
    total = float(arr.sum())
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"censoring masses sum to {total!r}, not 1")
    arr.setflags(write=False)
    return CensoringDistribution(grid, arr, name)


@dataclass(frozen=True)
class Observation:
    """One censored data point: time ``y`` and ``cause`` (0 = censored)."""

    y: int
    cause: int

    def __post_init__(self):
        if int(self.y) != self.y or self.y < 1:
            raise IndexOutOfRange(f"observation time must be a positive integer, got {self.y!r}")
        if int(self.cause) != self.cause or self.cause < 0:
            raise CauseOutOfRange(f"cause must be a non-negative integer, got {self.cause!r}")
        object.__setattr__(self, "y", int(self.y))
        object.__setattr__(self, "cause", int(self.cause))

    @property
    def delta(self) -> int:
        return int(self.cause != 0)

    def deltas(self, num_causes: int) -> tuple[int, ...]:
        """Indicator form ``(delta_1, ..., delta_M)``."""
        if self.cause > num_causes:
            raise CauseOutOfRange(f"cause {self.cause} outside 0..{num_causes}")
        return tuple(int(self.cause == j) for j in range(1, num_causes + 1))

    @classmethod
    def from_deltas(cls, y: int, deltas: Sequence[int]) -> "Observation":
        if any(d not in (0, 1) for d in deltas) or sum(deltas) > 1:
            raise CauseOutOfRange(f"indicators must be 0/1 with at most one set, got {list(deltas)}")
        cause = next((j for j, d in enumerate(deltas, start=1) if d), 0)
        return cls(y, cause)


class Dataset:
    """Ordered observations sharing a grid and cause count.

    Stored column-wise (``y`` and ``cause`` int64 arrays) so large simulated
    samples never materialize per-row objects unless iterated.
    """

    __slots__ = ("grid", "num_causes", "y", "cause")

    def __init__(self, grid, num_causes: int, y, cause):
        grid = _as_grid(grid)
        y = np.array(y, dtype=np.int64).reshape(-1)
        cause = np.array(cause, dtype=np.int64).reshape(-1)
        if y.shape != cause.shape:
            raise DimensionMismatch("y and cause columns differ in length")
        if y.size and (y.min() < 1 or y.max() > grid.t_max):
            raise GridMismatch(f"observation times must lie in 1..{grid.t_max}")
        if cause.size and (cause.min() < 0 or cause.max() > num_causes):
            raise CauseOutOfRange(f"causes must lie in 0..{num_causes}")
        y.setflags(write=False)
        cause.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "num_causes", int(num_causes))
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "cause", cause)

    def __setattr__(self, key, value):
        raise AttributeError("Dataset is immutable")

    @classmethod
    def from_observations(cls, grid, num_causes: int, observations: Iterable[Observation]):
        obs = list(observations)
        return cls(grid, num_causes, [o.y for o in obs], [o.cause for o in obs])

    @property
    def observations(self) -> tuple[Observation, ...]:
        return tuple(self)

    def __len__(self):
        return int(self.y.size)

    def __iter__(self) -> Iterator[Observation]:
        for y, c in zip(self.y.tolist(), self.cause.tolist()):
            yield Observation(y, c)

    def __getitem__(self, i) -> Observation:
        return Observation(int(self.y[i]), int(self.cause[i]))

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (self.grid == other.grid and self.num_causes == other.num_causes
                and np.array_equal(self.y, other.y) and np.array_equal(self.cause, other.cause))

    __hash__ = None

    def __repr__(self):
        return f"Dataset(t_max={self.grid.t_max}, num_causes={self.num_causes}, n={len(self)})"


class JointOutcomeDistribution:
    """pmf over ``{1..t_max} x {censored, cause 1..M}``.

    ``pmf[c, y - 1]`` is the probability of observing time ``y`` with cause
    ``c`` (row 0 is censoring).
    """

    __slots__ = ("grid", "num_causes", "pmf")

    def __init__(self, grid: TimeGrid, num_causes: int, pmf):
        pmf = _frozen(pmf)
        if pmf.shape != (num_causes + 1, grid.t_max):
            raise DimensionMismatch(
                f"pmf has shape {pmf.shape}, expected ({num_causes + 1}, {grid.t_max})")
        if np.any(pmf < 0):
            raise NegativeMass("joint pmf entries must be non-negative")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "num_causes", num_causes)
        object.__setattr__(self, "pmf", pmf)

    def __setattr__(self, key, value):
        raise AttributeError("JointOutcomeDistribution is immutable")

    def __repr__(self):
        return f"JointOutcomeDistribution(pmf={self.pmf.tolist()!r})"

    def prob(self, y: int, cause: int) -> float:
        _check_time(self.grid, y)
        if not 0 <= cause <= self.num_causes:
            raise CauseOutOfRange(f"cause {cause} outside 0..{self.num_causes}")
        return float(self.pmf[cause, y - 1])


def check_compatible(*items):
    """Raise GridMismatch unless all items share a grid and (where defined) M."""
    grids = {it.grid for it in items}
    if len(grids) > 1:
        raise GridMismatch(f"grids differ: {sorted(g.t_max for g in grids)}")
    causes = {it.num_causes for it in items if hasattr(it, "num_causes")}
    if len(causes) > 1:
        raise GridMismatch(f"cause counts differ: {sorted(causes)}")


def joint_pmf(Q: CompetingRisksDistribution, G: CensoringDistribution) -> JointOutcomeDistribution:
    """Exact pmf of the observed ``(Y, cause)`` under forecast ``Q`` and censoring ``G``."""
    check_compatible(Q, G)
    pmf = np.empty((Q.num_causes + 1, Q.grid.t_max))
    pmf[0] = Q.survival_vector() * G.mass
    pmf[1:] = Q.mass * G.at_least()
    return JointOutcomeDistribution(Q.grid, Q.num_causes, pmf)


def require_nonempty(data: Dataset):
    if len(data) == 0:
        raise EmptyDataset("dataset has no observations")
