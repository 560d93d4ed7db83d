"""Compare cut selection strategies over a batch of random instances.

Runs the decomposition with the smallest-multiplier selection, a fixed upward
direction, and the incumbent-tracking mode, then prints one table row per
strategy: status tally, iteration stats, fallback count.

    python3 scripts/strategy_sweep.py --count 40 --seed 7
"""

import argparse
import random
from collections import Counter
from dataclasses import replace
from fractions import Fraction as F

from bendercuts.benders import SolverConfig, SolveStatus, TrackIncumbent, solve
from bendercuts.cglp import Directional, MisOnes
from bendercuts.randgen import random_instance


def solvable(inst):
    """Nonnegative objectives keep the master bounded over x >= 0."""
    return replace(inst, c=tuple(abs(v) for v in inst.c),
                   d=tuple(abs(v) for v in inst.d))


def configs_for(n: int):
    up = Directional((F(0),) * n, F(1))
    return (
        ("mis", SolverConfig(strategy=MisOnes())),
        ("up-direction", SolverConfig(strategy=up)),
        ("track-incumbent", SolverConfig(strategy=up,
                                         core_point_mode=TrackIncumbent(F(1, 2)))),
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=40, help="instances to draw")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--max-iter", type=int, default=40)
    parser.add_argument("--finite", action="store_true",
                        help="draw finite master sets instead of x >= 0")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    instances = [solvable(random_instance(rng, finite=args.finite))
                 for _ in range(args.count)]

    totals = {name: Counter() for name, _ in configs_for(1)}
    iteration_log = {name: [] for name in totals}
    fallbacks = Counter()

    for inst in instances:
        for name, base in configs_for(inst.n):
            config = SolverConfig(strategy=base.strategy,
                                  max_iterations=args.max_iter,
                                  core_point_mode=base.core_point_mode)
            result = solve(inst, config)
            totals[name][result.status.value] += 1
            if result.status == SolveStatus.OPTIMAL:
                iteration_log[name].append(len(result.trace))
            fallbacks[name] += sum(1 for r in result.trace if r.fallback)

    print(f"{args.count} instances, seed {args.seed}, "
          f"{'finite' if args.finite else 'polyhedral'} master sets")
    header = f"{'strategy':<16} {'statuses':<40} {'iters avg':>9} {'max':>4} {'fallbacks':>9}"
    print(header)
    print("-" * len(header))
    for name in totals:
        tally = ", ".join(f"{k}:{v}" for k, v in sorted(totals[name].items()))
        iters = iteration_log[name]
        avg = f"{sum(iters) / len(iters):.2f}" if iters else "-"
        peak = max(iters) if iters else "-"
        print(f"{name:<16} {tally:<40} {avg:>9} {peak!s:>4} {fallbacks[name]:>9}")


if __name__ == "__main__":
    main()
