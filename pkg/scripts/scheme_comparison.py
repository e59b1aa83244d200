"""Compare the conditioning of the reconstruction schemes.

For each spin: the optimized direction set, a single-cone set, random
direction sets, the nested-cone grid, and random unitary frame sets, with the
condition number of each forward map (smaller means less noise amplification).

Usage: python scripts/scheme_comparison.py [--two-j-max 4] [--seed 0]
"""

import argparse
import math
import sys

import numpy as np

from spinportrait import (
    Direction,
    FeasibilityError,
    OptimizerConfig,
    Spin,
    aw_directions,
    aw_m_matrix,
    condition_number,
    default_aw_grid,
    newton_young_directions,
    optimize,
    q_matrix,
    r_matrix,
    random_frame_set,
)


def random_directions(spin: Spin, rng: np.random.Generator):
    return [
        Direction(math.acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2.0 * math.pi))
        for _ in range(2 * spin.two_j + 1)
    ]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--two-j-max", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    print(f"{'2j':>3} {'optimized':>11} {'cone 0.8':>10} {'random':>10} "
          f"{'grid M':>10} {'frames R':>10}")
    for two_j in range(1, args.two_j_max + 1):
        spin = Spin(two_j)
        ds, _ = optimize(
            spin, OptimizerConfig(restarts=3, max_iters=300, seed=args.seed + two_j)
        )
        cond_opt = condition_number(q_matrix(spin, ds.dirs))
        try:
            cone = newton_young_directions(spin, 0.8)
            cond_cone = condition_number(q_matrix(spin, cone.dirs))
        except FeasibilityError:
            cond_cone = float("nan")
        rng = np.random.default_rng(args.seed + 100 + two_j)
        cond_rand = float(
            np.median(
                [
                    condition_number(q_matrix(spin, random_directions(spin, rng)))
                    for _ in range(20)
                ]
            )
        )
        cond_grid = condition_number(
            aw_m_matrix(spin, aw_directions(default_aw_grid(spin)))
        )
        cond_frames = condition_number(
            r_matrix(spin, random_frame_set(spin, rng).frames)
        )
        print(
            f"{two_j:>3} {cond_opt:>11.3f} {cond_cone:>10.3f} {cond_rand:>10.3f} "
            f"{cond_grid:>10.3f} {cond_frames:>10.3f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
