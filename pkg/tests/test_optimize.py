import math

import numpy as np
import pytest

from spinportrait import (
    Direction,
    DirectionSet,
    DomainError,
    OptimizerConfig,
    Spin,
    condition_number,
    feasibility,
    objective,
    optimize,
    q_matrix,
)
from conftest import random_direction_set

INFEASIBLE = -1e18


def spearman(a, b) -> float:
    ra = np.argsort(np.argsort(a)).astype(float)
    rb = np.argsort(np.argsort(b)).astype(float)
    ra -= ra.mean()
    rb -= rb.mean()
    return float((ra @ rb) / math.sqrt((ra @ ra) * (rb @ rb)))


class TestObjective:
    def test_orthogonal_triad_is_global_maximum(self, orthogonal_triad):
        assert objective(orthogonal_triad, "gram-product") == pytest.approx(0.0, abs=1e-12)
        rng = np.random.default_rng(0)
        for _ in range(25):
            ds = random_direction_set(Spin(1), rng)
            assert objective(ds, "gram-product") <= 1e-12

    def test_coplanar_sentinel(self):
        ds = DirectionSet(
            Spin(1),
            [Direction(math.pi / 2, 0.0), Direction(math.pi / 2, 1.0), Direction(math.pi / 2, 2.0)],
        )
        assert objective(ds, "gram-product") == INFEASIBLE

    def test_condition_number_kind(self, orthogonal_triad):
        value = objective(orthogonal_triad, "condition-number")
        assert value == pytest.approx(
            -condition_number(q_matrix(Spin(1), orthogonal_triad.dirs))
        )

    def test_unknown_kind(self, orthogonal_triad):
        with pytest.raises(DomainError):
            objective(orthogonal_triad, "nope")

    def test_monotone_link_between_objectives(self):
        # better Gram product should mean lower condition number
        rng = np.random.default_rng(42)
        gram_values, conds = [], []
        count = 0
        while count < 50:
            ds = random_direction_set(Spin(1), rng)
            val = objective(ds, "gram-product")
            if val <= INFEASIBLE:
                continue
            gram_values.append(val)
            conds.append(condition_number(q_matrix(Spin(1), ds.dirs)))
            count += 1
        assert spearman(gram_values, conds) <= -0.8

    def test_gauge_invariance(self):
        # rotate every direction by one common SO(3) rotation
        rng = np.random.default_rng(5)
        spin = Spin(2)
        ds = random_direction_set(spin, rng)
        theta, axis_phi = 0.77, 0.31
        c, s = math.cos(theta), math.sin(theta)
        axis = np.array([math.cos(axis_phi), math.sin(axis_phi), 0.0])
        def rodrigues(v):
            return (
                v * c + np.cross(axis, v) * s + axis * (axis @ v) * (1 - c)
            )
        rotated = DirectionSet(
            spin,
            [Direction.from_cartesian(rodrigues(d.cartesian)) for d in ds.dirs],
        )
        before = objective(ds, "gram-product")
        after = objective(rotated, "gram-product")
        assert abs(before - after) < 1e-10


class TestOptimize:
    def test_spin_half_reaches_orthogonal_triad(self):
        ds, value = optimize(Spin(1), OptimizerConfig(restarts=3, max_iters=400, seed=0))
        v = ds.unit_vectors()
        triple = abs(v[0] @ np.cross(v[1], v[2]))
        assert triple >= 1.0 - 1e-6
        assert value >= math.log((1.0 - 1e-6) ** 2)

    def test_deterministic_under_seed(self):
        config = OptimizerConfig(restarts=2, max_iters=150, seed=7)
        ds1, v1 = optimize(Spin(2), config)
        ds2, v2 = optimize(Spin(2), config)
        assert v1 == v2
        assert ds1.dirs == ds2.dirs

    def test_beats_random_baselines_spin_one(self):
        spin = Spin(2)
        ds, value = optimize(spin, OptimizerConfig(restarts=2, max_iters=250, seed=3))
        rng = np.random.default_rng(99)
        baselines = []
        while len(baselines) < 50:
            cand = random_direction_set(spin, rng)
            val = objective(cand, "gram-product")
            if val > INFEASIBLE:
                baselines.append(val)
        assert value >= max(baselines)

    def test_result_is_feasible(self):
        for two_j in (1, 2, 3):
            ds, value = optimize(
                Spin(two_j), OptimizerConfig(restarts=2, max_iters=150, seed=two_j)
            )
            assert feasibility(ds) > 0.0
            assert value > INFEASIBLE

    def test_gauge_fixing(self):
        ds, _ = optimize(Spin(2), OptimizerConfig(restarts=1, max_iters=100, seed=11))
        assert ds.dirs[0].theta == 0.0
        assert ds.dirs[1].phi == 0.0

    def test_config_validation(self):
        with pytest.raises(DomainError):
            OptimizerConfig(objective="bogus")
        with pytest.raises(DomainError):
            OptimizerConfig(restarts=0)
        with pytest.raises(DomainError):
            OptimizerConfig(tolerance=0.0)

    def test_condition_number_objective_runs(self):
        ds, value = optimize(
            Spin(1),
            OptimizerConfig(
                objective="condition-number", restarts=1, max_iters=60, seed=0
            ),
        )
        assert value == pytest.approx(
            -condition_number(q_matrix(Spin(1), ds.dirs))
        )
        # optimum of the condition number is also the orthogonal triad
        assert -value < 1.8
