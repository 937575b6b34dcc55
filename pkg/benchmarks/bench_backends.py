"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_backends.py [--n 2000000] [--repeat 5]

Both backends are imported directly, so the CRSCORE_BACKEND flag does not
matter here. The first numba call (compilation or cache load) is excluded.
"""
import argparse
import time

import numpy as np

from crscore import make_censoring, make_distribution
from crscore.kernels import _numba, _numpy
from crscore.sim import _tables


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=2_000_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--t-max", type=int, default=50)
    parser.add_argument("--causes", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    T, M = args.t_max, args.causes
    flat = rng.dirichlet(np.ones(T * M + 1))
    P = make_distribution(T, M, flat[:-1].reshape(M, T), flat[-1])
    G = make_censoring(T, rng.dirichlet(np.ones(T)))
    event, censor = _tables(P, G)
    y, cause = _numpy.draw_observations(1, 0, args.n, event, censor, M)
    values = rng.random(args.n)

    cases = {
        "draw_observations": lambda impl: impl.draw_observations(1, 0, args.n, event, censor, M),
        "count_outcomes": lambda impl: impl.count_outcomes(y, cause, T, M),
        "neumaier_sum": lambda impl: impl.neumaier_sum(values),
    }
    print(f"n={args.n}  t_max={T}  causes={M}  best of {args.repeat}")
    print(f"{'kernel':<20}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, call in cases.items():
        call(_numba)
        t_np = best_of(lambda: call(_numpy), args.repeat)
        t_nb = best_of(lambda: call(_numba), args.repeat)
        print(f"{name:<20}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
