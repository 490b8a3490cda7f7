"""
Normalized flat coordinates ``c = h/g`` for the two CM cases and the
rational functions they are conjectured to produce under j.

At rho (variable ``t``, only exponents ``3n`` and ``3n+1`` occur)::

    g(t) = sum (-1)^n ((3n-2)!!!)^3 t^{3n}   / (3n)!
    h(t) = sum (-1)^n ((3n-1)!!!)^3 t^{3n+1} / (3n+1)!

At i (exponents ``2n`` and ``2n+1``)::

    g(t) = sum ((4n-3)!!!!)^2 t^{2n}   / (2n)!
    h(t) = sum ((4n-1)!!!!)^2 t^{2n+1} / (2n+1)!
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from mpmath import mp, mpc, mpf

from .errors import OutOfDomain, PoleInput
from .hypergeom import F21Params, f21_eval
from .modular import CMCase, CMPoint, disk_scale, get_case
from .precision import PrecisionPolicy, to_mpc, to_mpf
from .series_core import (
    Polynomial,
    TruncatedSeries,
    multifactorial,
    rational_function_expand,
    series_div,
)

DEFAULT_TERMS = 1000


@dataclass(frozen=True)
class FlatCoordinateSeries:
    case: CMCase
    h: TruncatedSeries
    g: TruncatedSeries
    c: TruncatedSeries


def _g_coeff(case: CMCase, n: int) -> Fraction:
    if case.point is CMPoint.RHO:
        return (-1) ** n * multifactorial(3, n, 2) ** 3 / factorial(3 * n)
    return multifactorial(4, n, 3) ** 2 / factorial(2 * n)


def _h_coeff(case: CMCase, n: int) -> Fraction:
    if case.point is CMPoint.RHO:
        return (-1) ** n * multifactorial(3, n, 1) ** 3 / factorial(3 * n + 1)
    return multifactorial(4, n, 1) ** 2 / factorial(2 * n + 1)


def flat_series(case, order: int) -> FlatCoordinateSeries:
    """Exact ``h``, ``g`` and ``c = h/g`` through ``t^order``."""
    case = get_case(case)
    if order < 1:
        raise ValueError("order must be >= 1")
    gap = case.coefficient_gap
    h = [Fraction(0)] * (order + 1)
    g = [Fraction(0)] * (order + 1)
    for n in range(order // gap + 1):
        if gap * n <= order:
            g[gap * n] = _g_coeff(case, n)
        if gap * n + 1 <= order:
            h[gap * n + 1] = _h_coeff(case, n)
    hs, gs = TruncatedSeries(h, order), TruncatedSeries(g, order)
    return FlatCoordinateSeries(case, hs, gs, series_div(hs, gs))


# ------------------------------------------------ rational right-hand sides

def conj_rhs_polynomials(case) -> tuple[Polynomial, Polynomial]:
    """Numerator and denominator of the rational function in t.

    rho: ``27 t^3 (8 - t^3)^3 / (1 + t^3)^3``; i: ``64 (3 + 4t^2)^3 / (1 - 4t^2)^2``.
    """
    case = get_case(case)
    if case.point is CMPoint.RHO:
        t3 = Polynomial.monomial(3)
        return t3 * 27 * (8 - t3) ** 3, (1 + t3) ** 3
    t2 = Polynomial.monomial(2)
    return (3 + t2 * 4) ** 3 * 64, (1 - t2 * 4) ** 2


def conj_rhs_series(case, order: int) -> TruncatedSeries:
    P, Q = conj_rhs_polynomials(case)
    return rational_function_expand(P, Q, order)


def conj_rhs(case, t, policy: PrecisionPolicy | None = None):
    """Value of the rational function; exact :class:`Fraction` for rational ``t``."""
    case = get_case(case)
    P, Q = conj_rhs_polynomials(case)
    if isinstance(t, (int, Fraction)):
        t = Fraction(t)
        den = Q(t)
        if den == 0:
            raise PoleInput(f"t = {t} is a pole of the {case} rational function")
        return P(t) / den
    policy = policy or PrecisionPolicy.default()
    with policy.workdps():
        t = to_mpc(t)
        den = Q(t)
        if den == 0:
            raise PoleInput(f"t = {t} is a pole of the {case} rational function")
        return P(t) / den


# ---------------------------------------------------- numerical evaluation

def check_domain(case: CMCase, t) -> None:
    if abs(t) >= to_mpf(case.convergence_radius):
        raise OutOfDomain(f"|t| = {mp.nstr(abs(t), 10)} must be < {case.convergence_radius} for case {case}")


@lru_cache(maxsize=8)
def _numeric_c_coeffs(point: CMPoint, terms: int, dps: int) -> tuple[mpc, ...]:
    """First ``terms`` nonzero coefficients of c in the variable ``s = t^gap``."""
    case = RHO_CASE if point is CMPoint.RHO else I_CASE
    gap = case.coefficient_gap
    with mp.workdps(dps):
        # term ratios of g and h, both in s
        g = [mpf(1)]
        h = [mpf(1)]
        for n in range(1, terms):
            if gap == 3:
                g.append(-g[-1] * mpf(3 * n - 2) ** 3 / ((3 * n) * (3 * n - 1) * (3 * n - 2)))
                h.append(-h[-1] * mpf(3 * n - 1) ** 3 / ((3 * n + 1) * (3 * n) * (3 * n - 1)))
            else:
                g.append(g[-1] * mpf(4 * n - 3) ** 2 / ((2 * n) * (2 * n - 1)))
                h.append(h[-1] * mpf(4 * n - 1) ** 2 / ((2 * n + 1) * (2 * n)))
        c: list[mpf] = []
        for n in range(terms):
            # g[0] == 1
            c.append(h[n] - mp.fdot(c, g[n:0:-1]) if n else h[0])
        return tuple(c)


def flat_eval_series(case, t, terms: int = DEFAULT_TERMS, policy: PrecisionPolicy | None = None) -> mpc:
    """``c(t)`` by summing the first ``terms`` nonzero terms of its power series."""
    case = get_case(case)
    policy = policy or PrecisionPolicy.default()
    dps = policy.working_dps(terms)
    coeffs = _numeric_c_coeffs(case.point, terms, dps)
    with mp.workdps(dps):
        t = to_mpc(t)
        check_domain(case, t)
        s = t ** case.coefficient_gap
        acc = mpc(0)
        for cn in reversed(coeffs):
            acc = acc * s + cn
        val = acc * t
    with policy.workdps():
        return +val


def flat_eval_hypergeometric(case, t, policy: PrecisionPolicy | None = None) -> mpc:
    """``c(t) = h(t)/g(t)`` through the 2F1 closed forms.

    rho: ``g = F(1/3,1/3;2/3;-t^3)``, ``h = t F(2/3,2/3;4/3;-t^3)``;
    i:   ``g = F(1/4,1/4;1/2;4t^2)``, ``h = t F(3/4,3/4;3/2;4t^2)``.
    """
    case = get_case(case)
    policy = policy or PrecisionPolicy.default()
    g, h = flat_hg_hypergeometric(case, t, policy)
    with policy.workdps():
        return h / g


def flat_hg_hypergeometric(case, t, policy: PrecisionPolicy) -> tuple[mpc, mpc]:
    case = get_case(case)
    with policy.workdps():
        t = to_mpc(t)
        if case.point is CMPoint.RHO:
            z = -t ** 3
            pg = F21Params(Fraction(1, 3), Fraction(1, 3), Fraction(2, 3))
            ph = F21Params(Fraction(2, 3), Fraction(2, 3), Fraction(4, 3))
        else:
            z = 4 * t ** 2
            pg = F21Params(Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
            ph = F21Params(Fraction(3, 4), Fraction(3, 4), Fraction(3, 2))
    g = f21_eval(pg, z, policy)
    h = f21_eval(ph, z, policy)
    with policy.workdps():
        return g, t * h


def flat_hg_series(case, t, policy: PrecisionPolicy, terms: int = DEFAULT_TERMS) -> tuple[mpc, mpc]:
    """``g(t)`` and ``h(t)`` by direct summation of their defining series."""
    case = get_case(case)
    gap = case.coefficient_gap
    with policy.workdps(terms):
        t = to_mpc(t)
        s = t ** gap
        eps = mpf(2) ** (-mp.prec - 4)
        g = tg = mpc(1)
        h = th = t
        for n in range(1, terms):
            if gap == 3:
                tg *= -s * mpf(3 * n - 2) ** 3 / ((3 * n) * (3 * n - 1) * (3 * n - 2))
                th *= -s * mpf(3 * n - 1) ** 3 / ((3 * n + 1) * (3 * n) * (3 * n - 1))
            else:
                tg *= s * mpf(4 * n - 3) ** 2 / ((2 * n) * (2 * n - 1))
                th *= s * mpf(4 * n - 1) ** 2 / ((2 * n + 1) * (2 * n))
            g += tg
            h += th
            if abs(tg) < eps * abs(g) and abs(th) < eps * max(abs(h), eps):
                break
    with policy.workdps():
        return +g, +h


def chat_rho(t, policy: PrecisionPolicy | None = None, terms: int = DEFAULT_TERMS) -> mpc:
    """Normalized flat coordinate ``c_rho(t) / (2 pi Omega_rho^2)``."""
    policy = policy or PrecisionPolicy.default()
    c = flat_eval_series(RHO_CASE, t, terms, policy)
    k = disk_scale(RHO_CASE, policy)
    with policy.workdps():
        return c / k


RHO_CASE = get_case("rho")
I_CASE = get_case("i")
