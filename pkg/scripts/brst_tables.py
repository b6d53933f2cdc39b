"""Nilpotency counts and low-weight BRST cohomology tables.

    python scripts/brst_tables.py --m 2 --level 1/3 --max-weight 4
    python scripts/brst_tables.py --m 3 --level 1/5 --max-weight 3 --window 0 1   # several minutes
"""
import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from cosetvoa.brst import cohomology_dims, nilpotency_report
from cosetvoa.cli import _series_oracle_free
from cosetvoa.quotient import partitions_min_part


@dataclass
class BRSTConfig:
    m: int = 2
    level: str = "1/3"
    max_weight: int = 4
    window: tuple = (0, 3)
    nil_weight: int = 4


def main(cfg: BRSTConfig):
    t0 = time.perf_counter()
    nil = nilpotency_report(cfg.m, cfg.nil_weight)
    print(f"sl{cfg.m} nilpotency, L0 <= {cfg.nil_weight}: {nil['states']} states, "
          f"failures {nil['failure_counts']} ({time.perf_counter() - t0:.1f}s)")
    t0 = time.perf_counter()
    T = cohomology_dims(cfg.m, Fraction(cfg.level), cfg.max_weight, *cfg.window)
    print(f"k = {cfg.level}, window {cfg.window} ({time.perf_counter() - t0:.1f}s)")
    print(f"{'w':>3} {'H0':>4} {'oracle':>7} stable  images per N")
    # free generators of conformal weights 2..m
    orc = _series_oracle_free(list(range(1, cfg.m)), cfg.max_weight)
    for w in T.weights:
        hist = "; ".join(f"N={N}:" + ",".join(f"{i}:{d}" for i, d in sorted(h.items()) if d)
                         for N, h in T.history[w])
        print(f"{w:>3} {T.dims.get((w, 0), 0):>4} {orc[w]:>7} {str(T.stable[w]):>6}  {hist}")
    print("off-degree classes:", T.nonzero_off_degree() or "none", "| euler ok:", T.euler_ok)
    if cfg.m == 2:
        assert orc == partitions_min_part(cfg.max_weight, 2)


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--level", default="1/3")
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--window", type=int, nargs=2, default=(0, 3))
    p.add_argument("--nil-weight", type=int, default=4)
    a = p.parse_args()
    main(BRSTConfig(a.m, a.level, a.max_weight, tuple(a.window), a.nil_weight))
