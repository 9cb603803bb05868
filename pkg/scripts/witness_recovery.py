#!/usr/bin/env python3
"""Measure the recovery rate of the numerical conjugacy solver: conjugate
each normal form by a random symplectic map of a given scale, then ask the
solver for a witness and check residual and symplectic defect."""

import argparse
import time
from fractions import Fraction

from effective_forms.exterior import pullback
from effective_forms.normal_forms import representative
from effective_forms.spmaps import symplectic_defect
from effective_forms.witness import SolverOptions, random_sp, solve_conjugacy


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=40)
    parser.add_argument("--scale", type=float, default=0.5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=6)
    args = parser.parse_args()

    for family in range(1, 10):
        w = (
            representative(family, Fraction(1))
            if family <= 3
            else representative(family)
        ).to_float()
        hits = 0
        worst = 0.0
        start = time.perf_counter()
        for trial in range(args.trials):
            f = random_sp(seed=args.seed + 10_000 * family + trial, scale=args.scale)
            target = pullback(f, w)
            res = solve_conjugacy(
                w, target, SolverOptions(seed=trial, restarts=args.restarts)
            )
            if (
                res.converged
                and res.residual < 1e-8
                and symplectic_defect(res.map) < 1e-10
            ):
                hits += 1
                worst = max(worst, res.residual)
        elapsed = time.perf_counter() - start
        print(
            f"family {family}: {hits}/{args.trials} recovered, "
            f"worst residual {worst:.2e}, {elapsed:.1f}s"
        )


if __name__ == "__main__":
    main()
