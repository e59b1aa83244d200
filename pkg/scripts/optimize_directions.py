"""Search for well-conditioned measurement directions across spins.

Prints, for each spin, the optimized Gram-product objective, the condition
number of the forward map, and the direction angles; optionally writes each
direction set to a JSON file usable by the CLI.

Usage: python scripts/optimize_directions.py [--two-j-max 6] [--restarts 4]
       [--seed 0] [--save-prefix out/dirs]
"""

import argparse
import math
import os
import sys

import numpy as np

from spinportrait import OptimizerConfig, Spin, condition_number, optimize, q_matrix
from spinportrait.io import save_directions


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--two-j-max", type=int, default=6)
    parser.add_argument("--restarts", type=int, default=4)
    parser.add_argument("--max-iters", type=int, default=400)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--save-prefix", default=None,
                        help="write <prefix>_twoj<N>.json per spin")
    args = parser.parse_args(argv)

    print(f"{'2j':>3} {'N_u':>4} {'objective':>14} {'cond(Q)':>10}")
    for two_j in range(1, args.two_j_max + 1):
        spin = Spin(two_j)
        config = OptimizerConfig(
            restarts=args.restarts,
            max_iters=args.max_iters,
            seed=args.seed + two_j,
        )
        ds, value = optimize(spin, config)
        cond = condition_number(q_matrix(spin, ds.dirs))
        print(f"{two_j:>3} {ds.n_dirs:>4} {value:>14.6f} {cond:>10.3f}")
        for k, d in enumerate(ds.dirs):
            print(f"      n_{k}: theta={d.theta:.6f} phi={d.phi:.6f}")
        if args.save_prefix:
            os.makedirs(os.path.dirname(args.save_prefix) or ".", exist_ok=True)
            save_directions(f"{args.save_prefix}_twoj{two_j}.json", ds.dirs)
    return 0


if __name__ == "__main__":
    sys.exit(main())
