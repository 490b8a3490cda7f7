"""Compare exact elliptic coefficients with the contour-integral oracle.

The oracle integrates j around a small circle in the disk coordinate and
recovers each coefficient by rational reconstruction.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from mpmath import mp, mpf

from lgmoon.errors import ReconstructionError
from lgmoon.modular import elliptic_expansion, elliptic_expansion_numeric
from lgmoon.precision import PrecisionPolicy, rational_reconstruct


@dataclass(frozen=True)
class OracleConfig:
    case: str = "i"
    order: int = 20
    digits: int = 50
    radius_fraction: str = "0.05"
    den_bound: int = 10 ** 10


def main(cfg: OracleConfig) -> int:
    policy = PrecisionPolicy(target_digits=cfg.digits)
    exact = elliptic_expansion(cfg.case, cfg.order)
    bad = 0
    print(f"{'n':>3}  {'samples':>7}  {'error est':>10}  {'reconstructed':>26}  match")
    for n in range(cfg.order + 1):
        est = elliptic_expansion_numeric(cfg.case, n, policy, radius_fraction=mpf(cfg.radius_fraction))
        try:
            got = str(rational_reconstruct(est.value, cfg.den_bound, tol=100 * est.error))
        except ReconstructionError as exc:
            got = type(exc).__name__
        ok = got == str(exact[n])
        bad += not ok
        print(f"{n:>3}  {est.samples:>7}  {mp.nstr(est.error, 3):>10}  {got:>26}  {'yes' if ok else 'NO'}")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", choices=["rho", "i"], default=OracleConfig.case)
    ap.add_argument("--order", type=int, default=OracleConfig.order)
    ap.add_argument("--digits", type=int, default=OracleConfig.digits)
    ap.add_argument("--radius-fraction", dest="radius_fraction", default=OracleConfig.radius_fraction)
    raise SystemExit(main(OracleConfig(**vars(ap.parse_args()))))
