#!/usr/bin/env python3
"""Sweep random symplectic conjugates of every normal form and report how
they classify, with timing. Exact arithmetic throughout."""

import argparse
import time
from fractions import Fraction

from effective_forms.classify import classify
from effective_forms.exterior import pullback
from effective_forms.normal_forms import representative
from effective_forms.spmaps import random_rational_symplectic


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--conjugates", type=int, default=25)
    parser.add_argument("--parameter", type=Fraction, default=Fraction(7, 4))
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    grand_start = time.perf_counter()
    for family in range(1, 10):
        t = args.parameter if family <= 3 else None
        w = representative(family, t) if t is not None else representative(family)
        start = time.perf_counter()
        mismatches = 0
        for k in range(args.conjugates):
            f = random_rational_symplectic(args.seed + 1000 * family + k)
            label = classify(pullback(f, w))
            if label.family != family or label.parameter != t:
                mismatches += 1
        elapsed = time.perf_counter() - start
        status = "ok" if mismatches == 0 else f"{mismatches} MISMATCHES"
        print(
            f"family {family} (parameter {t}): {args.conjugates} conjugates, "
            f"{status}, {elapsed:.2f}s"
        )
    print(f"total {time.perf_counter() - grand_start:.2f}s")


if __name__ == "__main__":
    main()
