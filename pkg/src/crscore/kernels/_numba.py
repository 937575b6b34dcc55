"""numba ports of the kernels in ``_numpy.py``."""
import os

import numba
import numpy as np
from numba import njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    # skip the TBB probe, which warns on older system TBB builds
    numba.config.THREADING_LAYER = "workqueue"

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)
UNIT = 2.0 ** -53


@njit(cache=True, inline="always")
def _uniform(seed, counter):
    z = seed + counter * GOLDEN
    z = (z ^ (z >> np.uint64(30))) * MIX1
    z = (z ^ (z >> np.uint64(27))) * MIX2
    z = z ^ (z >> np.uint64(31))
    return np.float64(z >> np.uint64(11)) * UNIT


@njit(cache=True)
def _uniforms(seed, counters):
    out = np.empty(counters.shape[0], dtype=np.float64)
    for k in range(counters.shape[0]):
        out[k] = _uniform(seed, counters[k])
    return out


def uniforms(seed, counters):
    return _uniforms(np.uint64(seed), np.asarray(counters, dtype=np.uint64))


@njit(cache=True, inline="always")
def _bisect_right(cum, u):
    lo = 0
    hi = cum.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if u < cum[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo


@njit(cache=True, parallel=True)
def _draw(seed, first, n, event_cum, censor_cum, num_causes, y, cause):
    tail_cell = event_cum.shape[0] - 1
    one = np.uint64(1)
    two = np.uint64(2)
    for k in prange(n):
        i = np.uint64(first + k)
        u_event = _uniform(seed, two * i + one)
        u_censor = _uniform(seed, two * i + two)
        cell = _bisect_right(event_cum, u_event)
        c = _bisect_right(censor_cum, u_censor) + 1
        t = cell // num_causes + 1
        if cell != tail_cell and t <= c:
            y[k] = t
            cause[k] = cell % num_causes + 1
        else:
            y[k] = c
            cause[k] = 0


def draw_observations(seed, first, n, event_cum, censor_cum, num_causes):
    y = np.empty(n, dtype=np.int64)
    cause = np.empty(n, dtype=np.int64)
    _draw(np.uint64(seed), np.int64(first), np.int64(n),
          np.ascontiguousarray(event_cum, dtype=np.float64),
          np.ascontiguousarray(censor_cum, dtype=np.float64),
          np.int64(num_causes), y, cause)
    return y, cause


@njit(cache=True)
def _count(y, cause, t_max, num_causes):
    counts = np.zeros((num_causes + 1, t_max), dtype=np.int64)
    for k in range(y.shape[0]):
        counts[cause[k], y[k] - 1] += 1
    return counts


def count_outcomes(y, cause, t_max, num_causes):
    return _count(np.asarray(y, dtype=np.int64), np.asarray(cause, dtype=np.int64),
                  np.int64(t_max), np.int64(num_causes))


@njit(cache=True)
def _neumaier(values):
    total = 0.0
    comp = 0.0
    for k in range(values.shape[0]):
        v = values[k]
        s = total + v
        if abs(total) >= abs(v):
            comp += (total - s) + v
        else:
            comp += (v - s) + total
        total = s
    return total + comp


def neumaier_sum(values):
    return float(_neumaier(np.ascontiguousarray(values, dtype=np.float64)))


def set_threads(n):
    numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))
