"""Decide random 3-CNF formulas through the distance reduction and compare with brute force.

    python3 scripts/sat_sweep.py --count 50 --max-vars 8 --seed 1 --workers 1
"""

import argparse
import random
import time

from rnnfsm.acceptance import random_3cnf
from rnnfsm.decision import sat_via_distance
from rnnfsm.reduction import ReductionParams, brute_force_sat


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--min-vars", type=int, default=3)
    ap.add_argument("--max-vars", type=int, default=8)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    p = ReductionParams()
    agree = sat_count = 0
    t0 = time.perf_counter()
    for i in range(args.count):
        n = rng.randint(args.min_vars, args.max_vars)
        # clause/variable ratio around the 3-SAT phase transition gives a mix of answers
        k = max(1, round(n * rng.uniform(3.0, 5.5)))
        F = random_3cnf(rng, n, k)
        t = time.perf_counter()
        got = sat_via_distance(F, p, args.workers)
        truth = brute_force_sat(F)
        agree += got == truth
        sat_count += truth
        print(f"{i:3d}  n={n:2d} k={k:2d}  reduction={'sat' if got else 'unsat':5}  "
              f"brute={'sat' if truth else 'unsat':5}  {time.perf_counter() - t:6.2f}s")
    print(f"agreement {agree}/{args.count}, satisfiable {sat_count}, total {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
