from fractions import Fraction as F

import pytest
from mpmath import mp, mpc, mpf

from lgmoon.errors import OutOfDomain, PoleInput
from lgmoon.flat import (
    chat_rho,
    conj_rhs,
    flat_eval_hypergeometric,
    flat_eval_series,
    flat_series,
)


def sqrt3_minus_1(policy):
    with policy.workdps():
        return mp.sqrt(3) - 1


def test_rho_series_prefixes():
    fs = flat_series("rho", 6)
    assert fs.g[3] == F(-1, 6)
    assert fs.h[4] == F(-1, 3)
    assert fs.c.coeffs == (0, 1, 0, 0, F(-1, 6), 0, 0)


def test_i_series_prefixes():
    fs = flat_series("i", 5)
    assert fs.g[0] == 1 and fs.h[1] == 1
    assert fs.c.support() == [1, 3, 5]


@pytest.mark.parametrize("case,gap,order", [("rho", 3, 90), ("i", 2, 60)])
def test_support_congruences(case, gap, order):
    fs = flat_series(case, order)
    assert all(k % gap == 0 for k in fs.g.support())
    assert all(k % gap == 1 for k in fs.h.support())
    assert all(k % gap == 1 for k in fs.c.support())


@pytest.mark.parametrize("case,t,digits", [
    ("rho", "sqrt3-1", "0.691592015"),
    ("rho", F(1, 2), "0.490175"),
    ("i", F(1, 3), "0.3830612321"),
])
def test_published_flat_values(policy, case, t, digits):
    tv = sqrt3_minus_1(policy) if t == "sqrt3-1" else t
    val = flat_eval_series(case, tv, 1000, policy)
    assert mp.nstr(val.real, len(digits) - 1).startswith(digits[:-1])
    with policy.workdps():
        assert abs(val.real - mpf(digits)) < mpf(10) ** -(len(digits) - 2)
        assert abs(val.imag) < policy.tolerance


@pytest.mark.parametrize("case,t", [("i", F(1, 3)), ("rho", F(1, 2)), ("rho", mpc("0.3", "0.5"))])
def test_series_matches_closed_form(policy, case, t):
    a = flat_eval_series(case, t, 1000, policy)
    b = flat_eval_hypergeometric(case, t, policy)
    with policy.workdps():
        assert abs(a - b) < policy.tolerance


def test_closed_form_at_zero(policy):
    assert flat_eval_hypergeometric("rho", 0, policy) == 0


def test_domain(policy):
    with pytest.raises(OutOfDomain):
        flat_eval_series("i", F(1, 2), 100, policy)
    with pytest.raises(OutOfDomain):
        flat_eval_series("rho", mpc("0.8", "0.8"), 100, policy)


def test_conj_rhs_values(policy):
    assert conj_rhs("rho", F(1, 2)) == F(9261, 8)
    assert conj_rhs("i", F(1, 3)) == F(1906624, 225)
    with policy.workdps():
        assert abs(conj_rhs("rho", sqrt3_minus_1(policy), policy) - 1728) < policy.tolerance
    with pytest.raises(PoleInput):
        conj_rhs("i", F(1, 2))
    with pytest.raises(PoleInput):
        conj_rhs("rho", -1)


def test_chat_rho(policy):
    assert chat_rho(0, policy) == 0
    for t in (mpf("0.2"), mpf("0.85"), mpc("0.1", "0.8"), mpc("-0.5", "-0.3")):
        assert abs(chat_rho(t, policy)) < 1
    with policy.workdps():
        assert abs(chat_rho(mpf("0.7"), policy).imag) < policy.tolerance
