"""Pure-numpy reference kernels.

These define the semantics; the numba versions in ``_numba.py`` must agree
with them bit for bit.
"""
import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)
UNIT = 2.0 ** -53


def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * MIX1
    z = (z ^ (z >> np.uint64(27))) * MIX2
    return z ^ (z >> np.uint64(31))


def uniforms(seed, counters):
    """Counter-indexed SplitMix64 outputs mapped to [0, 1).

    ``counters`` is an array of non-negative integers; output ``k`` is the
    ``counters[k]``-th SplitMix64 value of a generator started at ``seed``.
    """
    n = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + n * GOLDEN
        z = _mix(z)
    return (z >> np.uint64(11)).astype(np.float64) * UNIT


def draw_observations(seed, first, n, event_cum, censor_cum, num_causes):
    """Sample ``n`` censored outcomes starting at stream index ``first``.

    Observation ``i`` consumes counters ``2*i + 1`` (failure draw) and
    ``2*i + 2`` (censoring draw). ``event_cum`` is the cumulative mass of the
    time-major flattened (t, j) cells followed by the tail cell.
    """
    idx = np.arange(first, first + n, dtype=np.uint64)
    u_event = uniforms(seed, np.uint64(2) * idx + np.uint64(1))
    u_censor = uniforms(seed, np.uint64(2) * idx + np.uint64(2))
    cell = np.searchsorted(event_cum, u_event, side="right")
    c = np.searchsorted(censor_cum, u_censor, side="right") + 1
    tail_cell = event_cum.shape[0] - 1
    t = cell // num_causes + 1
    j = cell % num_causes + 1
    event = (cell != tail_cell) & (t <= c)
    y = np.where(event, t, c).astype(np.int64)
    cause = np.where(event, j, 0).astype(np.int64)
    return y, cause


def count_outcomes(y, cause, t_max, num_causes):
    flat = np.asarray(cause, dtype=np.int64) * t_max + (np.asarray(y, dtype=np.int64) - 1)
    counts = np.bincount(flat, minlength=(num_causes + 1) * t_max)
    return counts.astype(np.int64).reshape(num_causes + 1, t_max)


def neumaier_sum(values):
    total = 0.0
    comp = 0.0
    for v in np.asarray(values, dtype=np.float64).tolist():
        s = total + v
        if abs(total) >= abs(v):
            comp += (total - s) + v
        else:
            comp += (v - s) + total
        total = s
    return total + comp
