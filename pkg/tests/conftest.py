import numpy as np
import pytest

from crscore import make_censoring, make_distribution

DATA = __import__("pathlib").Path(__file__).parent / "data"


@pytest.fixture
def truth():
    return make_distribution(2, 2, [[0.2, 0.3], [0.1, 0.2]], 0.2, name="truth")


@pytest.fixture
def swapped():
    return make_distribution(2, 2, [[0.1, 0.3], [0.2, 0.2]], 0.2, name="swapped")


@pytest.fixture
def censoring():
    return make_censoring(2, [0.4, 0.6])


@pytest.fixture
def point_mass():
    return make_distribution(1, 1, [[1.0]], 0.0)


@pytest.fixture
def point_censoring():
    return make_censoring(1, [1.0])


def random_distribution(rng, t_max, num_causes, alpha=1.0, zero_tail=False):
    cells = num_causes * t_max + (0 if zero_tail else 1)
    flat = rng.dirichlet(np.full(cells, alpha))
    tail = 0.0 if zero_tail else flat[-1]
    mass = flat[: num_causes * t_max].reshape(num_causes, t_max)
    # absorb rounding so the make_distribution check sees an exact-ish total
    return make_distribution(t_max, num_causes, mass, tail)


def random_censoring(rng, t_max, support=None):
    support = t_max if support is None else support
    mass = np.zeros(t_max)
    mass[:support] = rng.dirichlet(np.ones(support))
    return make_censoring(t_max, mass)


def as_lists(dist):
    return dist.mass.tolist(), dist.tail


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                lines.append((rep.nodeid.split("::")[-1], outcome.upper()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{outcome:6} {name}")


def locality_perturbation(rng, Q, y, cause):
    """Move mass between two cells the score of ``(y, cause)`` never reads.

    For an event only ``f_cause(y)`` is protected; for a censored observation
    every cell at or before ``y`` is, so ``F(y)`` is untouched bit for bit.
    Returns None when no two free cells exist.
    """
    M, T = Q.num_causes, Q.grid.t_max
    cells = [(j, t) for j in range(M) for t in range(T)] + ["tail"]
    if cause:
        free = [c for c in cells if c != (cause - 1, y - 1)]
    else:
        free = [c for c in cells if c == "tail" or c[1] >= y]
    if len(free) < 2:
        return None
    a, b = rng.choice(len(free), size=2, replace=False)
    src, dst = free[a], free[b]
    mass, tail = Q.mass.copy(), Q.tail
    amount = (tail if src == "tail" else mass[src]) * rng.uniform(0.1, 0.9)
    if src == "tail":
        tail -= amount
    else:
        mass[src] -= amount
    if dst == "tail":
        tail += amount
    else:
        mass[dst] += amount
    from crscore import make_distribution
    return make_distribution(Q.grid, M, mass, tail)
