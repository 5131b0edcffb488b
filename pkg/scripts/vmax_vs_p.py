#!/usr/bin/env python3
"""Sweep the mixing parameter p and tabulate V_max statistics.

The two endpoints are degenerate (p=1 locks every joint at length 2,
p=0 stacks narrow bricks into ever-taller joints); the sweep shows the
interpolation in between.
"""

import argparse
from fractions import Fraction

from brickwall import builtin, sample_vmax


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed-brick", default="B22")
    ap.add_argument("-n", type=int, default=4, help="iteration depth")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--base-seed", type=int, default=0)
    ap.add_argument("--steps", type=int, default=10,
                    help="evaluate p = k/steps for k = 0..steps")
    args = ap.parse_args()

    rule = builtin("random_pp")
    print(f"{'p':>6} {'min':>5} {'mean':>8} {'max':>5}")
    for k in range(args.steps + 1):
        p = Fraction(k, args.steps)
        stats = sample_vmax(rule, args.seed_brick, args.n, p,
                            trials=args.trials, base_seed=args.base_seed)
        print(f"{str(p):>6} {stats.min:>5} {stats.mean:>8.2f} {stats.max:>5}")


if __name__ == "__main__":
    main()
