from fractions import Fraction as F

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from lgmoon.errors import OutOfDomain, PoleInput
from lgmoon.flat import flat_hg_series
from lgmoon.hypergeom import (
    F21Params,
    f21_eval,
    f21_terms_exact,
    j_from_gamma,
    j_from_lambda,
    pochhammer,
    tau_from_gamma,
    tau_from_lambda,
    transform_15_10_33,
    transform_quadratic_minus,
    transform_quadratic_plus,
)
from lgmoon.precision import to_mpf


def oracle(p: F21Params, z):
    with mp.workdps(100):
        return mpmath.hyp2f1(to_mpf(p.a), to_mpf(p.b), to_mpf(p.c), z)


def rel(x, y, dps=80):
    with mp.workdps(dps):
        return abs(x - y) / max(1, abs(y))


def test_f21_at_zero_and_log(policy):
    assert f21_eval(F21Params(F(1, 7), F(2, 9), F(5, 3)), 0, policy) == 1
    with policy.workdps():
        want = 2 * mp.log(2)
    assert rel(f21_eval(F21Params(1, 1, 2), F(1, 2), policy), want) < policy.tolerance


def test_f21_matches_g_series(policy):
    t = F(1, 3)
    g, _ = flat_hg_series("i", t, policy)
    val = f21_eval(F21Params(F(1, 4), F(1, 4), F(1, 2)), 4 * t * t, policy)
    assert rel(val, g) < policy.tolerance


# one point per evaluation strategy: direct, Pfaff, 1/z, ray continuation
@pytest.mark.parametrize("params,z", [
    ((F(1, 3), F(2, 5), F(7, 4)), mpc("0.3", "0.4")),
    ((F(1, 3), F(2, 5), F(7, 4)), mpc("-3", "0.5")),
    ((F(1, 3), F(2, 5), F(7, 4)), mpc("2.5", "-1.5")),
    ((F(1, 3), F(4, 3), F(7, 4)), mpc("2.5", "1.5")),
    ((F(1, 2), F(1, 2), F(1)), mp.expjpi(mpf(1) / 3)),
    ((F(-3, 2), F(5, 6), F(1, 3)), mpc("0.95", "0.05")),
    ((F(1, 4), F(3, 4), F(2)), mpc("-40", "0")),
])
def test_f21_against_mpmath(policy, params, z):
    p = F21Params(*params)
    assert rel(f21_eval(p, z, policy), oracle(p, z)) < policy.tolerance


def test_f21_conjugate_symmetry(policy):
    p = F21Params(F(1, 3), F(1, 5), F(3, 2))
    z = mpc("1.7", "0.2")
    with policy.workdps():
        assert abs(f21_eval(p, z, policy) - mp.conj(f21_eval(p, mp.conj(z), policy))) < policy.tolerance


def test_f21_cut_and_params(policy):
    with pytest.raises(OutOfDomain):
        f21_eval(F21Params(F(1, 3), F(1, 3), 1), 2, policy)
    with pytest.raises(OutOfDomain):
        F21Params(1, 1, -2)


def test_exact_term_ratio():
    p = F21Params(F(1, 3), F(2, 3), F(5, 4))
    z = F(2, 7)
    terms = f21_terms_exact(p, z, 12)
    for n in range(11):
        assert terms[n + 1] / terms[n] == (p.a + n) * (p.b + n) / ((p.c + n) * (n + 1)) * z
    assert terms[5] == pochhammer(p.a, 5) * pochhammer(p.b, 5) / (pochhammer(p.c, 5) * 120) * z ** 5


def test_connection_formula_against_series_at_rho(policy):
    # F(1/3,1/3;2/3;-t^3) = g(t) and F(2/3,2/3;4/3;-t^3) = h(t)/t at t = 1/2
    g, h = flat_hg_series("rho", F(1, 2), policy)
    a = transform_15_10_33(F21Params(F(1, 3), F(1, 3), F(2, 3)), F(-1, 8), policy)
    b = transform_15_10_33(F21Params(F(2, 3), F(2, 3), F(4, 3)), F(-1, 8), policy)
    with policy.workdps():
        h_over_t = 2 * h
    assert rel(a, g) < policy.tolerance
    assert rel(b, h_over_t) < policy.tolerance


def test_connection_formula_generic(policy):
    p = F21Params(F(2, 7), F(-3, 5), F(5, 4))
    z = mpc(-2, "0.5")
    assert rel(transform_15_10_33(p, z, policy), oracle(p, z)) < policy.tolerance


def test_quadratic_against_i_series(policy):
    t = F(1, 3)
    g, h = flat_hg_series("i", t, policy)
    z = 4 * t * t
    assert rel(transform_quadratic_plus(F(1, 4), F(1, 4), z, policy), g) < policy.tolerance
    with policy.workdps():
        h_over_t = 3 * h
    assert rel(transform_quadratic_minus(F(3, 4), F(3, 4), z, policy), h_over_t) < policy.tolerance


def test_quadratic_small_z(policy):
    assert transform_quadratic_plus(F(1, 3), F(1, 5), 0, policy) == 1
    with policy.workdps():
        v = transform_quadratic_minus(F(1, 3), F(1, 5), mpf("1e-20"), policy)
        assert abs(v - 1) < mpf("1e-18")


def test_tau_special_values(policy):
    with policy.workdps():
        assert abs(tau_from_lambda(F(1, 2), policy) - mpc(0, 1)) < policy.tolerance
        assert abs(tau_from_gamma(F(1, 2), policy) - mpc(0, 1) / mp.sqrt(3)) < policy.tolerance


def test_tau_escapes_to_cusp(policy):
    ims = [tau_from_gamma(mpf(x), policy).imag for x in ("0.3", "0.1", "0.01", "0.0001")]
    assert ims == sorted(ims)
    for lam in ("0.1", "0.5", "0.9"):
        tau = tau_from_lambda(mpf(lam), policy)
        with policy.workdps():
            assert abs(tau.real) < policy.tolerance and tau.imag > 0


def test_j_rational_formulas():
    assert j_from_lambda(F(1, 2)) == 1728
    assert j_from_gamma(F(1, 2)) == 54000
    assert j_from_lambda(F(2, 7)) == j_from_lambda(F(5, 7))
    with pytest.raises(PoleInput):
        j_from_lambda(1)
    with pytest.raises(PoleInput):
        j_from_gamma(0)


def test_connection_formula_rejects_degenerate_lower_parameter(policy):
    with pytest.raises(OutOfDomain):
        transform_15_10_33(F21Params(F(1, 3), F(4, 3), F(7, 4)), mpc(-2, "0.5"), policy)


@pytest.mark.parametrize("z", [F(1, 2), F(1, 10), F(-3), mpf("0.95")])
def test_connection_formula_on_real_axis(policy, z):
    p = F21Params(F(2, 7), F(-3, 5), F(5, 4))
    with mp.workdps(100):
        zz = to_mpf(z) if isinstance(z, F) else z
    assert rel(transform_15_10_33(p, z, policy), oracle(p, zz)) < policy.tolerance
    with pytest.raises(OutOfDomain):
        transform_15_10_33(p, 2, policy)


@pytest.mark.parametrize("z", [mpc("1.05", "1e-40"), mpc("1.05", "-1e-40"), mpc("3", "0.01")])
def test_f21_just_off_the_cut(policy, z):
    p = F21Params(F(1, 3), F(4, 3), F(7, 4))
    assert rel(f21_eval(p, z, policy), oracle(p, z)) < policy.tolerance
