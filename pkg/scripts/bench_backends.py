#!/usr/bin/env python3
"""Time the expanded-DP backend against the run-block backend.

The expanded backend scales with the *expanded* length (sum of scaled
exponents), the run-block backend with the number of runs. This script makes
the crossover visible: unit-cost distances between a^N b^N ... and a slightly
perturbed copy, for growing N.

Usage:
    python scripts/bench_backends.py [--max-exp 4096] [--runs 3]
"""

import argparse
import time
from fractions import Fraction

from expedit import EngineConfig, exp_edit_distance, parse_factors, unit_cost_model

MODEL = unit_cost_model("ab")
# generous guard so the expanded backend is timed, not refused
CONFIG = EngineConfig(expanded_cell_guard=10**9)


def make_pair(n: int):
    p = parse_factors([("a", Fraction(n)), ("b", Fraction(n)), ("a", Fraction(n))])
    q = parse_factors([("a", Fraction(n)), ("b", Fraction(n + 1)), ("a", Fraction(n - 1))])
    return p, q


def best_of(k, fn):
    times = []
    for _ in range(k):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-exp", type=int, default=4096, help="largest run exponent to try")
    ap.add_argument("--runs", type=int, default=3, help="timing repetitions (best is kept)")
    ap.add_argument("--expanded-cutoff", type=int, default=512,
                    help="skip the expanded backend above this exponent")
    args = ap.parse_args()

    print(f"{'N':>6}  {'expanded':>12}  {'run_block':>12}")
    n = 4
    while n <= args.max_exp:
        p, q = make_pair(n)
        row = [f"{n:>6}"]

        if n <= args.expanded_cutoff:
            t = best_of(args.runs, lambda: exp_edit_distance(p, q, MODEL, config=CONFIG))
            row.append(f"{t * 1000:>10.2f}ms")
        else:
            row.append(f"{'(skipped)':>12}")

        t = best_of(args.runs, lambda: exp_edit_distance(p, q, MODEL, backend="run_block"))
        row.append(f"{t * 1000:>10.2f}ms")

        print("  ".join(row))
        n *= 2

    # sanity: both backends agree where both ran
    p, q = make_pair(min(args.expanded_cutoff, args.max_exp))
    a = exp_edit_distance(p, q, MODEL, config=CONFIG).distance
    b = exp_edit_distance(p, q, MODEL, backend="run_block").distance
    assert a == b, (a, b)
    print(f"\nagreement check at N={min(args.expanded_cutoff, args.max_exp)}: {a}")


if __name__ == "__main__":
    main()
