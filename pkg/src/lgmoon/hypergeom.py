"""
Gauss hypergeometric function 2F1 at arbitrary precision, two classical
transformation laws, and the two hypergeometric inversion formulae for j.

Evaluation strategy for ``f21_eval`` (principal branch, cut along [1, inf)):

* ``|z| <= 0.9``: direct summation of the defining series.
* ``|z/(z-1)| <= 0.9``: Pfaff, ``F(a,b;c;z) = (1-z)^-a F(a, c-b; c; z/(z-1))``.
* ``|z| >= 1.1`` and ``a - b`` not an integer: the 1/z connection formula.
* everything else: Taylor re-expansion of the hypergeometric ODE along the
  ray from 0 to z, which stays in the cut plane for any z off the cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpc, mpf

from .errors import GammaPole, NoConvergence, OutOfDomain, PoleInput
from .precision import PrecisionPolicy, complex_pow_principal, gamma_real, to_mpc, to_mpf

DIRECT_RADIUS = mpf("0.9")
INVERSION_RADIUS = mpf("1.1")


@dataclass(frozen=True)
class F21Params:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, Fraction(v))
        if self.c <= 0 and self.c.denominator == 1:
            raise OutOfDomain(f"c = {self.c} is a nonpositive integer")


def pochhammer(q: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for k in range(n):
        out *= q + k
    return out


def f21_terms_exact(p: F21Params, z: Fraction, n: int) -> list[Fraction]:
    """The first ``n`` terms ``(a)_k (b)_k / ((c)_k k!) z^k`` as exact rationals."""
    terms = [Fraction(1)]
    for k in range(n - 1):
        terms.append(terms[-1] * (p.a + k) * (p.b + k) / ((p.c + k) * (k + 1)) * z)
    return terms


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def _rgamma(x: Fraction, policy: PrecisionPolicy) -> mpf:
    if _is_int(x) and x <= 0:
        return mpf(0)
    return 1 / _gamma(x, policy)


@lru_cache(maxsize=256)
def _gamma_cached(x: Fraction, dps: int) -> mpf:
    return gamma_real(x, PrecisionPolicy(target_digits=dps - 15, guard_digits=15))


def _gamma(x: Fraction, policy: PrecisionPolicy) -> mpf:
    return _gamma_cached(Fraction(x), policy.working_dps() + 10)


def _max_terms() -> int:
    return 40 * mp.dps + 2000


def _direct(a, b, c, z: mpc) -> mpc:
    """Sum the defining series at the current precision; intended for |z| < 1."""
    eps = mpf(2) ** (-mp.prec - 4)
    a, b, c = to_mpf(a), to_mpf(b), to_mpf(c)
    s = term = mpc(1)
    n = 0
    stall = 0
    limit = _max_terms()
    while True:
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        term *= ratio
        s += term
        n += 1
        if term == 0:
            return s
        if abs(ratio) < 1:
            stall = 0
            if abs(term) <= eps * abs(s):
                return s
        else:
            stall += 1
            if stall > 10 * mp.dps:
                raise NoConvergence(f"2F1 series terms not decreasing at z={z}")
        if n > limit:
            raise NoConvergence(f"2F1 series did not converge in {limit} terms at z={z}")


def _taylor_step(a, b, c, z0: mpc, h: mpc, w: mpc, dw: mpc) -> tuple[mpc, mpc]:
    """Advance a solution of the 2F1 ODE from z0 to z0 + h via its local Taylor series.

    With ``w(z0 + x) = sum u_k x^k`` the ODE
    ``z(1-z) w'' + (c - (a+b+1) z) w' - ab w = 0`` gives a three-term recurrence.
    """
    eps = mpf(2) ** (-mp.prec - 4)
    p0 = z0 * (1 - z0)
    p1 = 1 - 2 * z0
    q0 = c - (a + b + 1) * z0
    q1 = -(a + b + 1)
    ab = a * b
    u_prev, u_cur = w, dw  # u_k, u_{k+1}
    hk = h  # h^{k+1}
    val = w + dw * h
    dval = dw
    small = 0
    for k in range(_max_terms()):
        u_next = -((p1 * k * (k + 1) + q0 * (k + 1)) * u_cur
                   + (-k * (k - 1) + q1 * k - ab) * u_prev) / (p0 * (k + 2) * (k + 1))
        dval += (k + 2) * u_next * hk
        hk *= h
        term = u_next * hk
        val += term
        u_prev, u_cur = u_cur, u_next
        if abs(term) <= eps * abs(val):
            small += 1
            if small >= 3:
                return val, dval
        else:
            small = 0
    raise NoConvergence("Taylor re-expansion step did not converge")


def _segment_distance(p: mpc, q: mpc, x: mpc) -> mpf:
    d = q - p
    s = ((x - p) * mp.conj(d)).real / abs(d) ** 2 if d else mpf(0)
    return abs(p + min(max(s, 0), 1) * d - x)


def _ray_continue(a, b, c, z: mpc) -> mpc:
    """Continue along the ray from 0 to z, or around 1 on z's side when the ray grazes it."""
    a, b, c = to_mpf(a), to_mpf(b), to_mpf(c)
    z0 = z / abs(z) / 2
    path = [z]
    if _segment_distance(z0, z, mpc(1)) < min(mpf(1) / 4, abs(z - 1)):
        side = 1 if z.imag >= 0 else -1
        path = [mpc(1, side / mpf(2)), z]
    w = _direct(a, b, c, z0)
    dw = a * b / c * _direct(a + 1, b + 1, c + 1, z0)
    cur = z0
    for target in path:
        for _ in range(100000):
            radius = min(abs(cur), abs(1 - cur))
            h = target - cur
            last = abs(h) <= radius / 2
            if not last:
                h = h / abs(h) * radius / 2
            w, dw = _taylor_step(a, b, c, cur, h, w, dw)
            cur = target if last else cur + h
            if last:
                break
        else:
            raise NoConvergence("analytic continuation took too many steps")
    return w


def _on_cut(z: mpc) -> bool:
    return z.imag == 0 and z.real >= 1


def _f21(p: F21Params, z: mpc, policy: PrecisionPolicy) -> mpc:
    a, b, c = p.a, p.b, p.c
    if z == 0:
        return mpc(1)
    if abs(z) <= DIRECT_RADIUS:
        return _direct(a, b, c, z)
    if _on_cut(z):
        raise OutOfDomain(f"z = {z} lies on the branch cut [1, inf)")
    w = z / (z - 1)
    if abs(w) <= DIRECT_RADIUS:
        return mp.power(1 - z, -to_mpf(a)) * _direct(a, c - b, c, w)
    if abs(z) >= INVERSION_RADIUS and not _is_int(a - b):
        iz = 1 / z
        mz = -z
        g_c = _gamma(c, policy)
        t1 = (g_c * _gamma(b - a, policy) * _rgamma(b, policy) * _rgamma(c - a, policy)
              * mp.power(mz, -to_mpf(a)) * _direct(a, a - c + 1, a - b + 1, iz))
        t2 = (g_c * _gamma(a - b, policy) * _rgamma(a, policy) * _rgamma(c - b, policy)
              * mp.power(mz, -to_mpf(b)) * _direct(b, b - c + 1, b - a + 1, iz))
        return t1 + t2
    return _ray_continue(a, b, c, z)


def f21_eval(p: F21Params, z, policy: PrecisionPolicy) -> mpc:
    """``2F1(a, b; c; z)`` on the principal branch.

    Raises :class:`OutOfDomain` for z on the cut ``[1, inf)``.
    """
    with mp.workdps(policy.working_dps() + 10):
        zz = to_mpc(z)
        val = _f21(p, zz, policy)
    with policy.workdps():
        return +val


def _checked_gamma(x: Fraction, policy: PrecisionPolicy) -> mpf:
    if _is_int(x) and x <= 0:
        raise GammaPole(f"Gamma({x}) in a prefactor numerator")
    return _gamma(x, policy)


def transform_15_10_33(p: F21Params, z, policy: PrecisionPolicy) -> mpc:
    """Right-hand side of the connection formula expressing ``2F1(a,b;c;z)``
    through 2F1 at ``1/z`` and ``1 - 1/z``::

        G(1-b)G(c) / (G(a-b+1) G(c-a)) * (1/z)^a * F(a-c+1, a; a-b+1; 1/z)
      + G(1-b)G(c) / (G(a) G(c-a-b+1)) * (1 - 1/z)^(c-a-b) (-1/z)^b
                                        * F(c-a, 1-a; c-a-b+1; 1 - 1/z)

    All powers are principal.  For real z off the cut the matching one-sided
    limit is taken, which agrees with F there.
    """
    a, b, c = p.a, p.b, p.c
    for low in (a - b + 1, c - a - b + 1):
        if _is_int(low) and low <= 0:
            # the term becomes a regularized 2F1 limit that this form does not cover
            raise OutOfDomain(f"lower parameter {low} of a transformed 2F1 is a nonpositive integer")
    with mp.workdps(policy.working_dps() + 10):
        num = _checked_gamma(1 - b, policy) * _checked_gamma(c, policy)
        zz = to_mpc(z)
        if zz == 0:
            raise OutOfDomain("z = 0")
        iz = 1 / zz
        one_m = 1 - iz
        if zz.imag == 0:
            # F is analytic across the real axis off [1, inf); take the one-sided
            # limit that matches the principal powers below
            eps = mpf(10) ** (-2 * mp.dps)
            if zz.real >= 1:
                raise OutOfDomain(f"z = {zz} lies on the branch cut [1, inf)")
            if zz.real < 0:
                # arg(1/z) = +pi is the limit from Im z < 0: 1 - 1/z on the lower edge
                one_m = mpc(one_m.real, -eps)
            else:
                # limit from Im z > 0: (-1/z)^b has arg +pi and 1/z sits on the lower edge
                iz = mpc(iz.real, -eps)
        pre1 = num * _rgamma(a - b + 1, policy) * _rgamma(c - a, policy)
        pre2 = num * _rgamma(a, policy) * _rgamma(c - a - b + 1, policy)
        t1 = mpc(0)
        if pre1:
            t1 = (pre1 * complex_pow_principal(iz, a, policy)
                  * _f21(F21Params(a - c + 1, a, a - b + 1), iz, policy))
        t2 = mpc(0)
        if pre2:
            t2 = (pre2 * complex_pow_principal(one_m, c - a - b, policy)
                  * complex_pow_principal(-iz, b, policy)
                  * _f21(F21Params(c - a, 1 - a, c - a - b + 1), one_m, policy))
        val = t1 + t2
    with policy.workdps():
        return +val


def _quadratic_args(z: mpc) -> tuple[mpc, mpc, mpc]:
    r = mp.sqrt(z)
    return r, (1 - r) / 2, (1 + r) / 2


def transform_quadratic_plus(a, b, z, policy: PrecisionPolicy) -> mpc:
    """``2F1(a, b; 1/2; z)`` through the quadratic transformation

    ``2 G(1/2) G(a+b+1/2) / (G(a+1/2) G(b+1/2)) F(a,b;1/2;z)
    = F(2a, 2b; a+b+1/2; (1-sqrt z)/2) + F(2a, 2b; a+b+1/2; (1+sqrt z)/2)``.
    """
    a, b = Fraction(a), Fraction(b)
    half = Fraction(1, 2)
    with mp.workdps(policy.working_dps() + 10):
        pre = (2 * _checked_gamma(half, policy) * _checked_gamma(a + b + half, policy)
               * _rgamma(a + half, policy) * _rgamma(b + half, policy))
    if pre == 0:
        raise GammaPole("prefactor vanishes")
    q = F21Params(2 * a, 2 * b, a + b + half)
    with mp.workdps(policy.working_dps() + 10):
        zz = to_mpc(z)
        if zz == 0:
            val = mpc(1)
        else:
            _, lo, hi = _quadratic_args(zz)
            val = (_f21(q, lo, policy) + _f21(q, hi, policy)) / pre
    with policy.workdps():
        return +val


def transform_quadratic_minus(a, b, z, policy: PrecisionPolicy) -> mpc:
    """``2F1(a, b; 3/2; z)`` through the quadratic transformation

    ``2 sqrt(z) G(-1/2) G(a+b-1/2) / (G(a-1/2) G(b-1/2)) F(a,b;3/2;z)
    = F(2a-1, 2b-1; a+b-1/2; (1-sqrt z)/2) - F(2a-1, 2b-1; a+b-1/2; (1+sqrt z)/2)``.
    """
    a, b = Fraction(a), Fraction(b)
    half = Fraction(1, 2)
    with mp.workdps(policy.working_dps() + 10):
        pre = (2 * _checked_gamma(-half, policy) * _checked_gamma(a + b - half, policy)
               * _rgamma(a - half, policy) * _rgamma(b - half, policy))
    if pre == 0:
        raise GammaPole("prefactor vanishes")
    q = F21Params(2 * a - 1, 2 * b - 1, a + b - half)
    with mp.workdps(policy.working_dps() + 10):
        zz = to_mpc(z)
        if zz == 0:
            val = mpc(1)
        else:
            r, lo, hi = _quadratic_args(zz)
            val = (_f21(q, lo, policy) - _f21(q, hi, policy)) / (pre * r)
    with policy.workdps():
        return +val


RHO_PARAMS = F21Params(Fraction(1, 3), Fraction(2, 3), Fraction(1))
LAMBDA_PARAMS = F21Params(Fraction(1, 2), Fraction(1, 2), Fraction(1))


def _tau_ratio(p: F21Params, x, scale, policy: PrecisionPolicy) -> mpc:
    with mp.workdps(policy.working_dps() + 10):
        xx = to_mpc(x)
        den = _f21(p, xx, policy)
        if den == 0:
            raise PoleInput("denominator 2F1 vanishes")
        val = scale * _f21(p, 1 - xx, policy) / den
    with policy.workdps():
        return +val


def tau_from_gamma(gamma, policy: PrecisionPolicy) -> mpc:
    """``tau = i/sqrt(3) * F(1/3,2/3;1;1-gamma) / F(1/3,2/3;1;gamma)``."""
    with mp.workdps(policy.working_dps() + 10):
        scale = mpc(0, 1) / mp.sqrt(3)
    return _tau_ratio(RHO_PARAMS, gamma, scale, policy)


def tau_from_lambda(lam, policy: PrecisionPolicy) -> mpc:
    """``tau = i * F(1/2,1/2;1;1-lambda) / F(1/2,1/2;1;lambda)``."""
    return _tau_ratio(LAMBDA_PARAMS, lam, mpc(0, 1), policy)


def j_from_gamma(gamma, policy: PrecisionPolicy | None = None):
    """``27 (1 + 8 gamma)^3 / (gamma (1 - gamma)^3)``; exact for rational input."""
    if isinstance(gamma, (int, Fraction)):
        g = Fraction(gamma)
        if g in (0, 1):
            raise PoleInput("gamma must avoid 0 and 1")
        return 27 * (1 + 8 * g) ** 3 / (g * (1 - g) ** 3)
    policy = policy or PrecisionPolicy.default()
    with policy.workdps():
        g = to_mpc(gamma)
        if g == 0 or g == 1:
            raise PoleInput("gamma must avoid 0 and 1")
        return 27 * (1 + 8 * g) ** 3 / (g * (1 - g) ** 3)


def j_from_lambda(lam, policy: PrecisionPolicy | None = None):
    """``256 (1 - lambda + lambda^2)^3 / (lambda^2 (1 - lambda)^2)``; exact for rational input."""
    if isinstance(lam, (int, Fraction)):
        x = Fraction(lam)
        if x in (0, 1):
            raise PoleInput("lambda must avoid 0 and 1")
        return 256 * (1 - x + x * x) ** 3 / (x * x * (1 - x) ** 2)
    policy = policy or PrecisionPolicy.default()
    with policy.workdps():
        x = to_mpc(lam)
        if x == 0 or x == 1:
            raise PoleInput("lambda must avoid 0 and 1")
        return 256 * (1 - x + x * x) ** 3 / (x * x * (1 - x) ** 2)
