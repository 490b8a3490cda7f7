"""
Command-line interface.

Every command prints one JSON record ``{command, inputs, result, version}``
(or CSV for coefficient dumps).  Exit status: 0 success, 1 verification
failure, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from mpmath import mp, mpc, mpf

from . import __version__
from .engine import verify_numeric
from .errors import DomainError, MoonError
from .flat import flat_eval_series, flat_series
from .modular import elliptic_expansion, j_eval
from .precision import PrecisionPolicy, default_digits
from .series_core import TruncatedSeries
from .suites import SUITE_NAMES, CheckResult, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
DEFAULT_CAP = 500
SQRT3_MINUS_1 = "sqrt3-1"


class UsageError(MoonError):
    pass


# -------------------------------------------------------------- encoding

def encode_complex(z, digits: int) -> dict[str, Any]:
    with mp.workdps(digits + 10):
        z = mpc(z)
        return {"re": mp.nstr(z.real, digits), "im": mp.nstr(z.imag, digits), "digits": digits}


def to_jsonable(obj, digits: int):
    """Exact rationals become ``"p/q"`` strings, never floats."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > 2 ** 53 else obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (mpf, mpc)):
        if isinstance(obj, mpf) and mp.isinf(obj):
            return "inf"
        return encode_complex(obj, digits)
    if isinstance(obj, TruncatedSeries):
        return obj.to_strings()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name), digits) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    return str(obj)


def make_record(command: str, inputs: dict, result, digits: int) -> dict:
    return {"command": command, "inputs": to_jsonable(inputs, digits),
            "result": to_jsonable(result, digits), "version": __version__}


def coefficients_csv(series: TruncatedSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "value"])
    for k, c in enumerate(series.coeffs):
        w.writerow([k, str(c)])
    return buf.getvalue()


# --------------------------------------------------------------- parsing

def parse_t(text: str):
    """``"1/3"``, ``"0.5"`` (read as the exact decimal) or the token ``"sqrt3-1"``."""
    s = text.strip().replace(" ", "")
    if s.lower() == SQRT3_MINUS_1:
        return SQRT3_MINUS_1
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse t = {text!r}; use p/q, a decimal, or {SQRT3_MINUS_1}") from None


def t_value(t, policy: PrecisionPolicy):
    if t == SQRT3_MINUS_1:
        with policy.workdps():
            return mp.sqrt(3) - 1
    return t


_REAL = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


def parse_complex(text: str, policy: PrecisionPolicy) -> mpc:
    """Complex literal such as ``0.5+0.5i``, ``1.4243556206i`` or ``i``; digits are kept exactly."""
    s = text.strip().replace(" ", "").lower()
    re_s, im_s = s, "0"
    if s.endswith(("i", "j")):
        body = s[:-1]
        # split before the last sign that is not part of an exponent
        k = max((p for p, ch in enumerate(body) if ch in "+-" and p > 0 and body[p - 1] != "e"),
                default=0)
        re_s, im_s = (body[:k], body[k:]) if k else ("0", body)
        if im_s in ("", "+", "-"):
            im_s += "1"
    if not (_REAL.match(re_s) and _REAL.match(im_s)):
        raise UsageError(f"cannot parse complex number {text!r}")
    with policy.workdps():
        return mpc(mpf(re_s), mpf(im_s))


def _policy(args) -> PrecisionPolicy:
    return PrecisionPolicy(target_digits=args.digits)


# -------------------------------------------------------------- commands

def cmd_expand(args):
    if args.order < 0 or args.order > args.cap:
        raise UsageError(f"order must be in [0, {args.cap}]")
    series = elliptic_expansion(args.case, args.order)
    inputs = {"case": args.case, "order": args.order}
    return inputs, {"coefficients": series}, EXIT_OK, series


def cmd_flatcoord(args):
    if args.order is None and args.eval is None:
        raise UsageError("give an order, --eval T, or both")
    policy = _policy(args)
    inputs = {"case": args.case, "order": args.order, "eval": args.eval, "terms": args.terms,
              "digits": args.digits}
    result: dict[str, Any] = {}
    series = None
    if args.order is not None:
        if not 1 <= args.order <= args.cap:
            raise UsageError(f"order must be in [1, {args.cap}]")
        series = flat_series(args.case, args.order).c
        result["coefficients"] = series
    if args.eval is not None:
        t = t_value(parse_t(args.eval), policy)
        result["value"] = flat_eval_series(args.case, t, args.terms, policy)
    return inputs, result, EXIT_OK, series


def cmd_verify(args):
    policy = _policy(args)
    t = parse_t(args.t)
    rep = verify_numeric(args.case, t_value(t, policy), args.terms, policy,
                         tol=args.tol)
    rep.t = args.t if t == SQRT3_MINUS_1 else t
    inputs = {"case": args.case, "t": args.t, "digits": args.digits, "terms": args.terms}
    return inputs, rep, EXIT_OK if rep.passed else EXIT_FAIL, None


def cmd_suite(args):
    policy = _policy(args)
    checks: list[CheckResult] = run_suites(args.which, policy, seed=args.seed)
    ok = all(c.passed for c in checks)
    inputs = {"which": args.which, "digits": args.digits, "seed": args.seed}
    result = {"passed": ok, "checks": checks}
    return inputs, result, EXIT_OK if ok else EXIT_FAIL, None


def cmd_jeval(args):
    policy = _policy(args)
    tau = parse_complex(args.tau, policy)
    inputs = {"tau": args.tau, "digits": args.digits}
    return inputs, {"value": j_eval(tau, policy)}, EXIT_OK, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lgmoon", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    digits = default_digits()

    def add_digits(p):
        p.add_argument("--digits", type=int, default=digits, help="working precision (default %(default)s)")

    p = sub.add_parser("expand", help="exact elliptic expansion coefficients b(0..N)")
    p.add_argument("case", choices=["rho", "i"])
    p.add_argument("order", type=int)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("flatcoord", help="flat coordinate series and/or its value at t")
    p.add_argument("case", choices=["rho", "i"])
    p.add_argument("order", type=int, nargs="?")
    p.add_argument("--eval", metavar="T")
    p.add_argument("--terms", type=int, default=1000)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    add_digits(p)
    p.set_defaults(func=cmd_flatcoord)

    p = sub.add_parser("verify", help="numeric check of the identity at t")
    p.add_argument("case", choices=["rho", "i"])
    p.add_argument("t")
    p.add_argument("--terms", type=int, default=1000)
    p.add_argument("--tol", type=mpf, default=None, help="pass threshold (default 10^-(digits/2))")
    add_digits(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", help="run verification suites")
    p.add_argument("--which", choices=list(SUITE_NAMES) + ["all"], default="all")
    p.add_argument("--seed", type=int, default=0, help="seed for the sampled suites")
    add_digits(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("jeval", help="j(tau)")
    p.add_argument("tau")
    add_digits(p)
    p.set_defaults(func=cmd_jeval)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    digits = getattr(args, "digits", default_digits())
    if digits < 1:
        parser.error("--digits must be positive")
    try:
        inputs, result, code, series = args.func(args)
    except UsageError as exc:
        print(f"lgmoon {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"lgmoon {args.command}: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if getattr(args, "format", "json") == "csv" and series is not None:
        sys.stdout.write(coefficients_csv(series))
    else:
        print(json.dumps(make_record(args.command, inputs, result, digits), indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
