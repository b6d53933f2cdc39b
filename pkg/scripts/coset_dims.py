"""Graded dimensions of simple affine quotients and their commutants, with oracles.

    python scripts/coset_dims.py --m 2 --levels 1 2 3 --max-weight 6
"""
import argparse
from dataclasses import dataclass, field

from cosetvoa.quotient import (coset_dims, lattice_oracle_sl2_level1, parafermion_oracle, qseries,
                               simple_quotient)


@dataclass
class DimsConfig:
    m: int = 2
    levels: list = field(default_factory=lambda: [1, 2, 3])
    max_weight: int = 6
    sub: str = "heisenberg-full-cartan"


def main(cfg: DimsConfig):
    for k in cfg.levels:
        Q = simple_quotient(cfg.m, k, cfg.max_weight)
        cd = coset_dims(cfg.m, k, cfg.sub, cfg.max_weight, quotient=Q)
        print(f"sl{cfg.m} level {k}")
        print(f"   L dims      {Q.dims()}")
        if cfg.m == 2 and k == 1:
            print(f"   lattice     {lattice_oracle_sl2_level1(cfg.max_weight)}")
        print(f"   coset dims  {cd.dims}   {qseries(cd.dims)}")
        if cfg.sub == "heisenberg-full-cartan":
            print(f"   string-fn   {parafermion_oracle(cfg.m, k, cfg.max_weight, quotient=Q)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--levels", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--sub", default="heisenberg-full-cartan")
    a = p.parse_args()
    main(DimsConfig(a.m, a.levels, a.max_weight, a.sub))
