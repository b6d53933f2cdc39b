"""Compare the omega/W-generated subspace with the Cartan commutant of L(sl2, k).

    python scripts/generation.py --level 3 --max-weight 6
"""
import argparse
import json

from cosetvoa.quotient import generation_check

if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--level", type=int, default=3)
    p.add_argument("--max-weight", type=int, default=6)
    a = p.parse_args()
    rep = generation_check(2, a.level, a.max_weight)
    print(json.dumps(rep.as_dict(), indent=2))
