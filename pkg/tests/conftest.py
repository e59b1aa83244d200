import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from spinportrait import Direction, DirectionSet, OptimizerConfig, Spin, optimize

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def orthogonal_triad() -> DirectionSet:
    return DirectionSet(
        Spin(1),
        [
            Direction(0.0, 0.0),
            Direction(math.pi / 2, 0.0),
            Direction(math.pi / 2, math.pi / 2),
        ],
    )


def make_qutrit_set() -> DirectionSet:
    """Five spin-1 directions with the pairwise overlaps 1/sqrt(3).

    n1 = z; n2, n3, n4 at polar angle arccos(1/sqrt(3)) with azimuths chosen
    so n2.n3 = n2.n4 = 1/sqrt(3); n5 at the same polar angle with
    n3.n5 = 1/sqrt(3).
    """
    alpha = math.acos(1.0 / math.sqrt(3.0))
    dphi = math.acos((math.sqrt(3.0) - 1.0) / 2.0)
    return DirectionSet(
        Spin(2),
        [
            Direction(0.0, 0.0),
            Direction(alpha, 0.0),
            Direction(alpha, dphi),
            Direction(alpha, -dphi),
            Direction(alpha, 2.0 * dphi),
        ],
    )


@pytest.fixture(scope="session")
def qutrit_set() -> DirectionSet:
    return make_qutrit_set()


@pytest.fixture(scope="session")
def optimized_sets():
    """Optimizer outputs shared across tests, keyed by two_j."""
    cache = {}

    def get(two_j: int) -> DirectionSet:
        if two_j not in cache:
            ds, _ = optimize(
                Spin(two_j),
                OptimizerConfig(restarts=2, max_iters=300, seed=2024 + two_j),
            )
            cache[two_j] = ds
        return cache[two_j]

    return get


def random_direction(rng: np.random.Generator) -> Direction:
    return Direction(math.acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2 * math.pi))


def random_direction_set(spin: Spin, rng: np.random.Generator) -> DirectionSet:
    return DirectionSet(
        spin, [random_direction(rng) for _ in range(2 * spin.two_j + 1)]
    )
