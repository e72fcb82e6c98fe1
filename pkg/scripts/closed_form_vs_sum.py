"""Time the Z/p Gauss-sum closed form against direct character summation.

Reports agreement counts and mean wall time per evaluation for each prime.
"""

import argparse
import time
from dataclasses import dataclass

from dwcalc import dw_formula, dw_prime_closed_form, omega_l
from dwcalc.verify import prime_branch_suite


@dataclass
class CompareConfig:
    primes: tuple[int, ...] = (3, 5, 7, 11, 13)
    per_branch: int = 30
    seed: int = 0


def run(cfg: CompareConfig) -> None:
    print(f"{'p':>3} {'branch':>7} {'cases':>6} {'agree':>6} {'closed us':>10} {'sum us':>10}")
    for p in cfg.primes:
        for branch in ("unit", "simple", "square"):
            cases = prime_branch_suite(p, branch, cfg.per_branch, cfg.seed)
            agree, t_closed, t_sum, n = 0, 0.0, 0.0, 0
            for l in range(p):
                w = omega_l(p, l)
                for M in cases:
                    t0 = time.perf_counter()
                    a = dw_prime_closed_form(p, l, M).value
                    t1 = time.perf_counter()
                    b = dw_formula(w.group, w, M).value
                    t2 = time.perf_counter()
                    agree += a == b
                    t_closed += t1 - t0
                    t_sum += t2 - t1
                    n += 1
            print(f"{p:>3} {branch:>7} {n:>6} {agree:>6} {1e6 * t_closed / n:>10.1f} {1e6 * t_sum / n:>10.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=list(CompareConfig.primes))
    ap.add_argument("--per-branch", type=int, default=CompareConfig.per_branch)
    ap.add_argument("--seed", type=int, default=CompareConfig.seed)
    ns = ap.parse_args()
    run(CompareConfig(tuple(ns.primes), ns.per_branch, ns.seed))
