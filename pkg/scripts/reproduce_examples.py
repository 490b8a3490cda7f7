"""Reproduce the three worked examples: flat coordinate, j-argument and j-value."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from lgmoon.engine import verify_numeric
from lgmoon.flat import flat_eval_series
from lgmoon.modular import conjecture_argument
from lgmoon.precision import PrecisionPolicy


@dataclass(frozen=True)
class ExampleConfig:
    digits: int = 50
    terms: int = 1000
    show: int = 15


def examples(policy: PrecisionPolicy):
    with policy.workdps():
        root = mp.sqrt(3) - 1
    return [("rho", "sqrt(3) - 1", root), ("rho", "1/2", Fraction(1, 2)), ("i", "1/3", Fraction(1, 3))]


def main(cfg: ExampleConfig) -> int:
    policy = PrecisionPolicy(target_digits=cfg.digits)
    ok = True
    for case, label, t in examples(policy):
        c = flat_eval_series(case, t, cfg.terms, policy)
        arg = conjecture_argument(case, c, policy)
        rep = verify_numeric(case, t, cfg.terms, policy)
        ok &= rep.passed
        print(f"case {case:>3}  t = {label}")
        print(f"    c(t)      = {mp.nstr(c.real, cfg.show)}")
        print(f"    argument  = {mp.nstr(arg, cfg.show)}")
        print(f"    j         = {mp.nstr(rep.lhs.real, cfg.show)}")
        print(f"    rational  = {rep.rhs if isinstance(rep.rhs, Fraction) else mp.nstr(rep.rhs.real, cfg.show)}")
        print(f"    residual  = {mp.nstr(rep.abs_residual, 3)}  ({'pass' if rep.passed else 'FAIL'})")
    return 0 if ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=ExampleConfig.digits)
    ap.add_argument("--terms", type=int, default=ExampleConfig.terms)
    ap.add_argument("--show", type=int, default=ExampleConfig.show)
    raise SystemExit(main(ExampleConfig(**vars(ap.parse_args()))))
