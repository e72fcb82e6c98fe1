"""Table of twisted invariants of small Seifert manifolds over Z/m, every level.

    python3 scripts/invariant_table.py --m 5 --max-coeff 3
"""

import argparse
import math
from dataclasses import dataclass

from dwcalc import SeifertData, dw_formula, omega_l


@dataclass
class TableConfig:
    m: int = 3
    max_coeff: int = 3
    genus: int = 0


def manifolds(cfg: TableConfig):
    r = range(1, cfg.max_coeff + 1)
    for a1 in r:
        for b1 in r:
            if math.gcd(a1, b1) != 1:
                continue
            for a2 in r:
                for b2 in range(-cfg.max_coeff, cfg.max_coeff + 1):
                    if math.gcd(a2, b2) == 1 and (a1, b1) <= (a2, b2):
                        yield SeifertData(cfg.genus, ((a1, b1), (a2, b2)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=TableConfig.m)
    ap.add_argument("--max-coeff", type=int, default=TableConfig.max_coeff)
    ap.add_argument("--genus", type=int, default=TableConfig.genus)
    cfg = TableConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})

    cocycles = [omega_l(cfg.m, l) for l in range(cfg.m)]
    print("manifold".ljust(24) + " | ".join(f"l={l}".ljust(28) for l in range(cfg.m)))
    for M in manifolds(cfg):
        cells = [str(dw_formula(w.group, w, M).value.minimal()) for w in cocycles]
        print(str(M).ljust(24) + " | ".join(c.ljust(28) for c in cells))


if __name__ == "__main__":
    main()
