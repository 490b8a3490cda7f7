"""Run the verification suites and print one line per check."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from mpmath import mp

from lgmoon.precision import PrecisionPolicy
from lgmoon.suites import SUITE_NAMES, run_suites


@dataclass(frozen=True)
class SuiteConfig:
    which: str = "all"
    digits: int = 50
    seed: int = 0


def fmt(x) -> str:
    if x is None:
        return "-"
    try:
        return mp.nstr(x, 3)
    except (TypeError, ValueError):
        return str(x)


def main(cfg: SuiteConfig) -> int:
    policy = PrecisionPolicy(target_digits=cfg.digits)
    names = SUITE_NAMES if cfg.which == "all" else (cfg.which,)
    failed = 0
    for name in names:
        t0 = time.perf_counter()
        results = run_suites(name, policy, seed=cfg.seed)
        dt = time.perf_counter() - t0
        print(f"== {name} ({dt:.1f} s)")
        for r in results:
            failed += not r.passed
            print(f"  {'PASS' if r.passed else 'FAIL'}  {r.name:<55} residual {fmt(r.residual):>10}  tol {fmt(r.tolerance)}")
    print(f"{failed} failing checks")
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--which", choices=list(SUITE_NAMES) + ["all"], default=SuiteConfig.which)
    ap.add_argument("--digits", type=int, default=SuiteConfig.digits)
    ap.add_argument("--seed", type=int, default=SuiteConfig.seed)
    raise SystemExit(main(SuiteConfig(**vars(ap.parse_args()))))
