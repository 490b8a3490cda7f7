"""
Arbitrary-precision real/complex helpers built on mpmath.

Every public function takes a :class:`PrecisionPolicy` and runs inside
``mp.workdps(policy.working_dps())``; nothing here touches ``mp.dps`` outside
of such a context manager.  Values are plain ``mpmath.mpf``/``mpc`` objects.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpc, mpf

from .errors import Ambiguous, GammaPole, NoneFound, NonPositiveArgument, ZeroBase

DEFAULT_DIGITS = 50
DEFAULT_GUARD = 15


def default_digits() -> int:
    """Target digits, overridable through the ``MOON_DIGITS`` environment variable."""
    return int(os.environ.get("MOON_DIGITS", DEFAULT_DIGITS))


@dataclass(frozen=True)
class PrecisionPolicy:
    """Target accuracy ``target_digits`` plus ``guard_digits`` of headroom.

    ``working_dps(terms)`` adds one more digit per ten summed series terms.
    """

    target_digits: int = DEFAULT_DIGITS
    guard_digits: int = DEFAULT_GUARD

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_digits < 10:
            raise ValueError("guard_digits must be at least 10")

    @classmethod
    def default(cls) -> "PrecisionPolicy":
        return cls(target_digits=default_digits())

    def working_dps(self, terms: int = 0) -> int:
        return self.target_digits + self.guard_digits + terms // 10

    def workdps(self, terms: int = 0):
        return mp.workdps(self.working_dps(terms))

    @property
    def tolerance(self) -> mpf:
        """Accuracy contract ``10^-(D - G)`` used by the property suites."""
        return mpf(10) ** (-(self.target_digits - self.guard_digits))

    @property
    def pass_threshold(self) -> mpf:
        """Default verification threshold ``10^-(D/2)``."""
        return mpf(10) ** (-(self.target_digits / 2))


def to_mpf(x) -> mpf:
    """Exact-ish conversion: Fractions go through an mpf division at current precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def to_mpc(x) -> mpc:
    if isinstance(x, Fraction):
        return mpc(to_mpf(x))
    return mpc(x)


def const_pi(policy: PrecisionPolicy) -> mpf:
    with policy.workdps():
        return +mp.pi


def const_rho(policy: PrecisionPolicy) -> mpc:
    """``rho = exp(i pi/3) = (1 + i sqrt 3)/2``."""
    with policy.workdps():
        return mpc(mpf(1) / 2, mp.sqrt(3) / 2)


def complex_pow_principal(z, a, policy: PrecisionPolicy) -> mpc:
    """``exp(a Log z)`` with ``arg z`` in ``(-pi, pi]``."""
    with policy.workdps():
        z = to_mpc(z)
        if z == 0:
            raise ZeroBase("0 has no principal power")
        a = a if isinstance(a, (mpf, mpc)) else to_mpf(a)
        return mp.exp(a * mp.log(z))


@lru_cache(maxsize=16)
def _spouge_coeffs(a: int, dps: int) -> tuple[mpf, ...]:
    with mp.workdps(dps):
        cs = [mp.sqrt(2 * mp.pi)]
        fact = mpf(1)
        for k in range(1, a):
            if k > 1:
                fact *= k - 1
            ck = (-1) ** (k - 1) / fact * mp.power(a - k, k - mpf(1) / 2) * mp.exp(a - k)
            cs.append(ck)
        return tuple(cs)


def _spouge(z: mpf, dps: int) -> mpf:
    # Gamma(z + 1) for z in [0, 1); relative error < a^-1/2 (2 pi)^-(a + 1/2)
    a = int(dps * mp.log(10) / mp.log(2 * mp.pi)) + 2
    inner = 2 * dps + 10  # the alternating sum cancels roughly dps digits
    cs = _spouge_coeffs(a, inner)
    with mp.workdps(inner):
        z = mpf(z)
        s = cs[0]
        for k in range(1, a):
            s += cs[k] / (z + k)
        return mp.power(z + a, z + mpf(1) / 2) * mp.exp(-(z + a)) * s


def gamma_eval(x, policy: PrecisionPolicy) -> mpf:
    """Gamma at a positive real (typically rational) argument via Spouge's formula."""
    with policy.workdps():
        xv = to_mpf(x)
        if xv <= 0:
            raise NonPositiveArgument(f"gamma_eval needs x > 0, got {x}")
    return gamma_real(x, policy)


def gamma_real(x, policy: PrecisionPolicy) -> mpf:
    """Gamma at any real non-pole, using the functional equation to reach [1, 2)."""
    dps = policy.working_dps()
    with mp.workdps(dps + 10):
        if isinstance(x, Fraction):
            if x.denominator == 1 and x <= 0:
                raise GammaPole(f"Gamma has a pole at {x}")
            n = x.numerator // x.denominator  # floor
            frac = to_mpf(x - n)
        else:
            xv = mpf(x)
            if xv <= 0 and xv == mp.floor(xv):
                raise GammaPole(f"Gamma has a pole at {x}")
            n = int(mp.floor(xv))
            frac = xv - n
        # x = n + frac, frac in [0, 1): Gamma(x) = Gamma(1 + frac) * shift
        g = _spouge(frac, dps + 10)
        if n >= 1:
            # Gamma(n + frac) = Gamma(1 + frac) * prod_{k=1}^{n-1} (k + frac)
            for k in range(1, n):
                g *= k + frac
        else:
            # Gamma(frac + n) = Gamma(1 + frac) / prod_{k=n}^{0} (k + frac)
            for k in range(n, 1):
                g /= k + frac
    with mp.workdps(dps):
        return +g


def rational_reconstruct(x, den_bound: int, tol=None) -> Fraction:
    """The unique ``p/q`` with ``q <= den_bound`` within ``tol`` of ``x``.

    Uses the continued-fraction best approximation.  ``tol`` is the error
    ball the caller certifies for ``x``; it defaults to half the current
    working digits.  Raises :class:`NoneFound` if no candidate lies in the
    ball and :class:`Ambiguous` if the ball is too wide to single one out.
    """
    if tol is None:
        tol = mpf(10) ** (-(mp.dps // 2))
    tol = mpf(tol)
    # take parts without rounding to the ambient precision
    if isinstance(x, mpc):
        re_part, im_part = x.real, x.imag
    else:
        re_part, im_part = (x if isinstance(x, mpf) else to_mpf(x)), mpf(0)
    if abs(im_part) > tol:
        raise NoneFound(f"value has non-negligible imaginary part {mpmath.nstr(im_part, 5)}")
    if not mpmath.isfinite(re_part):
        raise NoneFound("value is not finite")
    sign, man, exp, _ = re_part._mpf_
    exact = (-1) ** sign * Fraction(int(man)) * (Fraction(2) ** int(exp))
    cand = exact.limit_denominator(den_bound)
    err = abs(to_mpf(exact - cand))
    if err > tol:
        raise NoneFound(f"no rational with denominator <= {den_bound} within {mpmath.nstr(tol, 3)}")
    # two distinct fractions with denominators q, q' <= den_bound differ by >= 1/(q q')
    if 2 * tol >= mpf(1) / (cand.denominator * den_bound):
        raise Ambiguous(f"tolerance {mpmath.nstr(tol, 3)} too coarse for denominator bound {den_bound}")
    return cand
