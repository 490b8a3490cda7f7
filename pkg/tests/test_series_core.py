from fractions import Fraction as F

import pytest

from lgmoon.errors import (
    InvalidParameters,
    NonzeroConstantTerm,
    NotReversible,
    PoleAtOrigin,
    ZeroConstantTerm,
)
from lgmoon.flat import conj_rhs_series, flat_series
from lgmoon.series_core import (
    Polynomial,
    TruncatedSeries as TS,
    multifactorial,
    p_polynomials,
    rational_function_expand,
    series_add,
    series_compose,
    series_div,
    series_mul,
    series_reversion,
)


def t_(order):
    return TS.variable(order)


def test_add_identity_and_cancellation():
    assert series_add(TS([1, 1], 3), TS.zero(3)) == TS([1, 1], 3)
    a = TS([0, 1, 0, F(-1, 6)], 3)
    assert series_add(a, TS([0, 0, 0, F(1, 6)], 3)) == TS([0, 1], 3)


def test_add_prefixes_of_h_and_g():
    fs = flat_series("rho", 3)
    assert series_add(fs.h, fs.g) == TS([1, 1, 0, F(-1, 6)], 3)


def test_add_takes_smaller_order():
    assert series_add(TS([1, 2, 3], 2), TS([1], 0)).order == 0


def test_mul_difference_of_squares():
    assert series_mul(TS([1, 1], 4), TS([1, -1], 4)) == TS([1, 0, -1], 4)


def test_mul_by_inverse_is_one():
    g = flat_series("rho", 30).g
    assert series_mul(g, series_div(TS.one(30), g)) == TS.one(30)


def test_mul_recovers_polynomial_numerator_i():
    # (1 - 4t^2)^2 * series = 64 (3 + 4t^2)^3
    s = conj_rhs_series("i", 20)
    q = Polynomial([1, 0, -4]) ** 2
    p = Polynomial([3, 0, 4]) ** 3 * 64
    assert series_mul(q.to_series(20), s) == p.to_series(20)


def test_div_examples():
    assert series_div(t_(5), TS.one(5)) == t_(5)
    num = TS([0, 1, 0, 0, F(-1, 3)], 6)
    den = TS([1, 0, 0, F(-1, 6)], 6)
    got = series_div(num, den)
    assert got.coeffs[:7] == (0, 1, 0, 0, F(-1, 6), 0, 0)


def test_div_zero_constant_raises():
    with pytest.raises(ZeroConstantTerm):
        series_div(TS.one(3), t_(3))


def test_div_general_constant():
    assert series_div(TS([2, 2], 3), TS([2], 3)) == TS([1, 1], 3)


def test_compose_square():
    outer = TS([0, 0, 1], 4)
    inner = TS([0, 1, 1], 4)
    assert series_compose(outer, inner) == TS([0, 0, 1, 2, 1], 4)


def test_compose_requires_zero_constant():
    with pytest.raises(NonzeroConstantTerm):
        series_compose(TS([1, 1], 3), TS([1, 1], 3))


def test_compose_order_with_high_valuation_inner():
    # outer known through w^2, inner = t^3: result known through t^8
    out = series_compose(TS([1, 1, 1], 2), TS.monomial(3, 20))
    assert out.order == 8
    assert out.coeffs == (1, 0, 0, 1, 0, 0, 1, 0, 0)


def test_reversion_examples():
    assert series_reversion(t_(6)) == t_(6)
    assert series_reversion(TS([0, 1, 1], 4)) == TS([0, 1, -1, 2, -5], 4)


def test_reversion_of_flat_coordinate():
    c = flat_series("i", 16).c
    assert series_compose(c, series_reversion(c)) == t_(16)
    assert series_compose(series_reversion(c), c) == t_(16)


def test_reversion_rejects():
    with pytest.raises(NotReversible):
        series_reversion(TS([0, 0, 1], 3))
    with pytest.raises(NotReversible):
        series_reversion(TS([1, 1], 3))


def test_rational_expand_geometric():
    assert rational_function_expand(Polynomial([1]), Polynomial([1, -1]), 7) == TS([1] * 8, 7)


def test_rational_expand_conjecture_sides():
    assert conj_rhs_series("rho", 12).support() == [3, 6, 9, 12]
    assert [conj_rhs_series("rho", 12)[k] for k in (3, 6, 9, 12)] == [13824, -46656, 99144, -171315]
    assert [conj_rhs_series("i", 6)[k] for k in (0, 2, 4, 6)] == [1728, 20736, 147456, 851968]


def test_rational_expand_pole():
    with pytest.raises(PoleAtOrigin):
        rational_function_expand(Polynomial([1]), Polynomial([0, 1]), 4)


@pytest.mark.parametrize("M,n,r,want", [(3, 0, 1, 1), (3, 2, 2, 4), (4, 2, 1, 21), (4, 3, 3, 1 * 5 * 9)])
def test_multifactorial(M, n, r, want):
    assert multifactorial(M, n, r) == want


@pytest.mark.parametrize("M,n,r", [(3, 1, 0), (3, 1, 3), (0, 1, 1), (3, -1, 1)])
def test_multifactorial_invalid(M, n, r):
    with pytest.raises(InvalidParameters):
        multifactorial(M, n, r)


def test_p_polynomials_seeds():
    ps = p_polynomials(3)
    assert ps[0] == Polynomial.monomial(3)
    assert ps[1] == Polynomial.monomial(2, -1)
    # b(3) = -1728 * 6^3 * p_3(0) / 3! = 13824
    assert F(-1728 * 6 ** 3) * ps[3](0) / 6 == 13824


def test_p_polynomials_invalid():
    with pytest.raises(InvalidParameters):
        p_polynomials(0)


def test_series_rejects_floats_and_index_beyond_order():
    with pytest.raises(TypeError):
        TS([0.5])
    with pytest.raises(IndexError):
        TS([1, 2], 1)[2]


def test_negative_power_and_derivative():
    s = TS([1, 1], 5)
    assert s ** -1 == TS([1, -1, 1, -1, 1, -1], 5)
    assert TS([1, 2, 3], 2).derivative() == TS([2, 6], 1)
