"""
Klein's j-function: exact q-expansion, numerical evaluation on the upper
half-plane, the disk uniformizations at the CM points rho and i, and the
elliptic (Taylor) expansions of j in the renormalized disk coordinate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from mpmath import mp, mpc, mpf

from .errors import ContourTooLarge, NotUpperHalfPlane, PoleInput
from .precision import PrecisionPolicy, gamma_eval, to_mpc
from .series_core import TruncatedSeries, p_polynomials, series_compose, series_reversion


class CMPoint(enum.Enum):
    RHO = "rho"
    I = "i"


@dataclass(frozen=True)
class CMCase:
    """One of the two expansion points, with its coefficient gap and the
    radius ``|t| < R`` on which the rational-function identity holds."""

    point: CMPoint
    coefficient_gap: int
    convergence_radius: Fraction

    @property
    def name(self) -> str:
        return self.point.value

    def tau_star(self, policy: PrecisionPolicy) -> mpc:
        with policy.workdps():
            if self.point is CMPoint.RHO:
                return mpc(mpf(1) / 2, mp.sqrt(3) / 2)
            return mpc(0, 1)

    def omega(self, policy: PrecisionPolicy) -> mpf:
        return omega_period(self, policy)

    def __str__(self):
        return self.name


RHO = CMCase(CMPoint.RHO, 3, Fraction(1))
I = CMCase(CMPoint.I, 2, Fraction(1, 2))
CASES = {"rho": RHO, "i": I}


def get_case(case) -> CMCase:
    if isinstance(case, CMCase):
        return case
    try:
        return CASES[str(case).lower()]
    except KeyError:
        raise ValueError(f"unknown CM case {case!r}; expected 'rho' or 'i'") from None


# ---------------------------------------------------------------- q-series

def _sigma3(n: int) -> int:
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def _euler_product_pow24(order: int) -> TruncatedSeries:
    # prod (1 - q^n) through the pentagonal number theorem, then to the 24th power
    cs = [0] * (order + 1)
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e <= order:
                cs[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return TruncatedSeries(cs, order) ** 24


@dataclass(frozen=True)
class JQSeries:
    """``j = q^-1 + sum_{k>=0} coeffs[k] q^k``."""

    principal_part: int
    coeffs: TruncatedSeries

    def __getitem__(self, k: int) -> Fraction:
        if k == -1:
            return Fraction(self.principal_part)
        return self.coeffs[k]


def j_q_expansion(order: int) -> JQSeries:
    """Exact Fourier coefficients of j through ``q^order`` as ``E4^3 / Delta``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    n = order + 1
    e4 = TruncatedSeries([1] + [240 * _sigma3(k) for k in range(1, n + 1)], n)
    ratio = (e4 ** 3) / _euler_product_pow24(n)  # = q * j
    return JQSeries(int(ratio[0]), TruncatedSeries(ratio.coeffs[1:], order))


# ------------------------------------------------------------ evaluation

def reduce_to_fundamental_domain(tau: mpc, max_iter: int = 1000) -> mpc:
    for _ in range(max_iter):
        tau = tau - mp.nint(tau.real)
        if abs(tau) < 1 - mpf(2) ** (-mp.prec // 2):
            tau = -1 / tau
        else:
            return tau
    raise NotUpperHalfPlane("reduction to the fundamental domain did not terminate")


def _j_from_q(q: mpc) -> mpc:
    eps = mpf(2) ** (-mp.prec - 4)
    # E4 = 1 + 240 sum n^3 q^n / (1 - q^n)
    e4 = mpc(0)
    qn = q
    n = 1
    while True:
        term = n ** 3 * qn / (1 - qn)
        e4 += term
        if abs(term) < eps:
            break
        n += 1
        qn *= q
    e4 = 1 + 240 * e4
    # prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}
    eta = mpc(1)
    k = 1
    while True:
        t1 = mp.power(q, k * (3 * k - 1) // 2)
        t2 = mp.power(q, k * (3 * k + 1) // 2)
        sign = -1 if k % 2 else 1
        eta += sign * (t1 + t2)
        if abs(t1) < eps:
            break
        k += 1
    return e4 ** 3 / (q * eta ** 24)


def j_eval(tau, policy: PrecisionPolicy) -> mpc:
    """``j(tau)`` for ``Im tau > 0``, after reduction into the fundamental domain."""
    with mp.workdps(policy.working_dps() + 10):
        tau = to_mpc(tau)
        if tau.imag <= 0:
            raise NotUpperHalfPlane(f"Im tau must be positive, got {tau}")
        tau = reduce_to_fundamental_domain(tau)
        q = mp.exp(2j * mp.pi * tau)
        val = _j_from_q(q)
    with policy.workdps():
        return +val


# ------------------------------------------------- periods and disk maps

@lru_cache(maxsize=32)
def _omega_cached(point: CMPoint, dps: int) -> mpf:
    pol = PrecisionPolicy(target_digits=dps - 15, guard_digits=15)
    third, quarter = Fraction(1, 3), Fraction(1, 4)
    with mp.workdps(dps):
        if point is CMPoint.RHO:
            ratio = gamma_eval(third, pol) / gamma_eval(2 * third, pol)
            return mp.power(ratio, mpf(3) / 2) / mp.sqrt(6 * mp.pi)
        return gamma_eval(quarter, pol) / gamma_eval(3 * quarter, pol) / mp.sqrt(8 * mp.pi)


def omega_period(case, policy: PrecisionPolicy) -> mpf:
    """Chowla-Selberg period:

    * rho: ``(6 pi)^-1/2 (Gamma(1/3)/Gamma(2/3))^(3/2)``
    * i:   ``(8 pi)^-1/2 Gamma(1/4)/Gamma(3/4)``
    """
    case = get_case(case)
    val = _omega_cached(case.point, policy.working_dps() + 10)
    with policy.workdps():
        return +val


def disk_scale(case, policy: PrecisionPolicy) -> mpf:
    """``2 pi Omega^2``, the radius of the renormalized disk."""
    om = omega_period(case, policy)
    with policy.workdps():
        return 2 * mp.pi * om ** 2


def map_S(case, tau, policy: PrecisionPolicy) -> mpc:
    """``(tau - tau*) / (tau - conj(tau*))``."""
    case = get_case(case)
    ts = case.tau_star(policy)
    with policy.workdps():
        tau = to_mpc(tau)
        den = tau - mp.conj(ts)
        if den == 0:
            raise PoleInput("tau = conj(tau*)")
        return (tau - ts) / den


def map_S_inv(case, w, policy: PrecisionPolicy) -> mpc:
    """``(tau* - conj(tau*) w) / (1 - w)``."""
    case = get_case(case)
    ts = case.tau_star(policy)
    with policy.workdps():
        w = to_mpc(w)
        if w == 1:
            raise PoleInput("w = 1")
        return (ts - mp.conj(ts) * w) / (1 - w)


def map_s_inv(case, w, policy: PrecisionPolicy) -> mpc:
    """Renormalized inverse ``S^-1(w / (2 pi Omega^2))``."""
    k = disk_scale(case, policy)
    with policy.workdps():
        u = to_mpc(w) / k
    return map_S_inv(case, u, policy)


def conjecture_argument(case, w, policy: PrecisionPolicy) -> mpc:
    """Point at which j is evaluated for disk coordinate ``w``.

    ``s^-1(w)`` at i and ``(s^-1(w) + 1)/3`` at rho.
    """
    case = get_case(case)
    tau = map_s_inv(case, w, policy)
    if case.point is CMPoint.RHO:
        with policy.workdps():
            return (tau + 1) / 3
    return tau


# ------------------------------------------------- elliptic expansions

def elliptic_expansion_rho(order: int) -> TruncatedSeries:
    """``b_rho(n) = -1728 * 6^n * p_n(0) / n!`` for ``n <= order``."""
    ps = p_polynomials(max(order, 1))
    return TruncatedSeries(
        [Fraction(-1728 * 6 ** n) * ps[n](0) / factorial(n) for n in range(order + 1)], order
    )


def elliptic_expansion_i(order: int) -> TruncatedSeries:
    """Exact ``b_i(n)`` for ``n <= order``.

    Obtained by composing the expansion of ``64 (3 + 4t^2)^3 / (1 - 4t^2)^2``
    with the compositional inverse of the flat coordinate ``c_i``.
    """
    from .flat import conj_rhs_series, flat_series

    order = max(order, 1)
    c = flat_series(I, order).c
    return series_compose(conj_rhs_series(I, order), series_reversion(c))


def elliptic_expansion(case, order: int) -> TruncatedSeries:
    case = get_case(case)
    if case.point is CMPoint.RHO:
        return elliptic_expansion_rho(order)
    return elliptic_expansion_i(order)


@dataclass(frozen=True)
class ContourEstimate:
    value: mpc
    error: mpf
    samples: int
    radius: mpf


@lru_cache(maxsize=64)
def _contour_samples(point: CMPoint, radius_fraction: str, target: int, guard: int, m: int) -> tuple[mpc, ...]:
    """j on ``m`` equispaced points of the circle, reusing the ``m/2`` grid."""
    inner = PrecisionPolicy(target, guard)
    case = RHO if point is CMPoint.RHO else I
    coarse = _contour_samples(point, radius_fraction, target, guard, m // 2) if m % 2 == 0 and m > 8 else None
    r = disk_scale(case, inner) * mpf(radius_fraction)
    vals = []
    for idx in range(m):
        if coarse is not None and idx % 2 == 0:
            vals.append(coarse[idx // 2])
            continue
        with inner.workdps():
            w = r * mp.expjpi(mpf(2 * idx) / m)
        vals.append(j_eval(conjecture_argument(case, w, inner), inner))
    return tuple(vals)


def elliptic_expansion_numeric(case, n: int, policy: PrecisionPolicy,
                               radius_fraction=mpf("0.05"), max_samples: int = 4096) -> ContourEstimate:
    """n-th Taylor coefficient of ``w -> j(conjecture_argument(w))`` by the
    trapezoidal rule on ``|w| = radius_fraction * 2 pi Omega^2``.

    The sample count starts at ``4(n+1)`` and doubles until three successive
    estimates agree to ``D - 2G`` digits relative to ``max|f| / r^n``.
    """
    case = get_case(case)
    if n < 0:
        raise ValueError("n must be >= 0")
    if not 0 < radius_fraction < 1:
        raise ContourTooLarge("contour must lie strictly inside the renormalized disk")
    inner = PrecisionPolicy(policy.target_digits + 10, policy.guard_digits)
    rf = mp.nstr(mpf(radius_fraction), 30)
    k = disk_scale(case, inner)
    with inner.workdps():
        r = k * mpf(rf)
        target = mpf(10) ** (-(policy.target_digits - 2 * policy.guard_digits))
        m = 4 * (n + 1)
        m = 1 << (m - 1).bit_length()
        prev = None
        settled = []
        while m <= max_samples:
            vals = _contour_samples(case.point, rf, inner.target_digits, inner.guard_digits, m)
            est = mp.fsum(vals[i] * mp.expjpi(-mpf(2 * i * n) / m) for i in range(m)) / m / r ** n
            scale = max(abs(v) for v in vals) / r ** n
            if prev is not None:
                err = abs(est - prev)
                settled = settled + [err] if err <= target * scale else []
                # two grids in a row: the gap structure can zero the alias b(n+m) for one m,
                # never for both m and 2m
                if len(settled) == 2:
                    floor = mpf(10) ** (-inner.working_dps()) * scale
                    return ContourEstimate(est, max(settled[-1], floor), m, r)
            prev = est
            m *= 2
    raise ContourTooLarge(f"trapezoidal rule did not settle within {max_samples} samples")
