"""How often the class-level phase formula agrees with the Euclidean product.

The representative-exact form always agrees; the class form, which reads the
order of z and the restricted level only, misses whenever z is not the
canonical generator of its cyclic subgroup.
"""

import argparse
from dataclasses import dataclass

from dwcalc.cocycles import omega_l
from dwcalc.kappa import KappaQuery, kappa, kappa_class, kappa_oracle


@dataclass
class CensusConfig:
    max_m: int = 10
    coeff: int = 12


def main(cfg: CensusConfig) -> None:
    print(f"{'m':>3} {'cases':>7} {'exact':>7} {'class':>7}")
    for m in range(2, cfg.max_m + 1):
        total = exact = cls = 0
        for l in range(m):
            w = omega_l(m, l)
            for z in range(m):
                for a in range(-cfg.coeff, cfg.coeff + 1):
                    for b in range(-cfg.coeff, cfg.coeff + 1):
                        q = KappaQuery(a, b, z, w)
                        o = kappa_oracle(q)
                        total += 1
                        exact += kappa(q) == o
                        cls += kappa_class(q) == o
        print(f"{m:>3} {total:>7} {exact:>7} {cls:>7}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=CensusConfig.max_m)
    ap.add_argument("--coeff", type=int, default=CensusConfig.coeff)
    ns = ap.parse_args()
    main(CensusConfig(ns.max_m, ns.coeff))
