"""Run the identity suite for several l and write a JSON summary.

    python scripts/run_suite.py --ls 1 2 3 --out suite.json
"""
import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from cosetvoa.lemmas import cross_lemma_report, ww_mode_scan, run_suite
from cosetvoa.coset import CosetContext


@dataclass
class SuiteConfig:
    ls: list = field(default_factory=lambda: [1, 2, 3])
    level: str = "symbolic"
    out: str | None = None


def main(cfg: SuiteConfig):
    level = None if cfg.level == "symbolic" else cfg.level
    out = {"config": asdict(cfg), "runs": []}
    for l in cfg.ls:
        t0 = time.perf_counter()
        reports = run_suite(l, level)
        tally = Counter((r.check_id, r.status) for r in reports)
        out["runs"].append({
            "l": l, "seconds": round(time.perf_counter() - t0, 2),
            "counts": [{"check_id": c, "status": s, "n": k} for (c, s), k in sorted(tally.items())],
            "failures": [r.as_dict(timing=False) for r in reports if not r.passed],
        })
        print(f"l={l}: {sum(r.passed for r in reports)}/{len(reports)} pass "
              f"({out['runs'][-1]['seconds']}s)")
        for (c, s), k in sorted(tally.items()):
            if s != "pass":
                print(f"   {s} x{k}: {c}")
    out["cross_check"] = cross_lemma_report(None).as_dict(timing=False)
    out["mode_scan"] = ww_mode_scan(CosetContext(1)).as_dict(timing=False)
    print("mode scan:", out["mode_scan"]["note"])
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(out, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--ls", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--level", default="symbolic")
    p.add_argument("--out")
    main(SuiteConfig(**vars(p.parse_args())))
