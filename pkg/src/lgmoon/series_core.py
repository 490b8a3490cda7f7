"""
Exact univariate power series and polynomials over Q.

Coefficients are :class:`fractions.Fraction`, which is always stored in lowest
terms, so two series compare equal exactly when their coefficient lists do.

A :class:`TruncatedSeries` of order ``N`` knows the coefficients of
``t^0 .. t^N``; everything beyond ``t^N`` is *unknown* (not zero).  Binary
operations therefore return the smaller of the two orders.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

from .errors import (
    InvalidParameters,
    NonzeroConstantTerm,
    NotReversible,
    PoleAtOrigin,
    ZeroConstantTerm,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    return Fraction(x)


def format_fraction(x: Fraction) -> str:
    """Render as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(x)


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


class TruncatedSeries:
    """Power series ``sum_{k<=N} a_k t^k + O(t^{N+1})`` with rational coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [as_fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        else:
            cs.extend([_ZERO] * (order + 1 - len(cs)))
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.order: int = order

    @classmethod
    def _raw(cls, coeffs: list[Fraction], order: int) -> "TruncatedSeries":
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.order = order
        return obj

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls._raw([_ZERO] * (order + 1), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.monomial(0, order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        return cls.monomial(1, order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "TruncatedSeries":
        cs = [_ZERO] * (order + 1)
        if k <= order:
            cs[k] = as_fraction(coeff)
        return cls._raw(cs, order)

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(k)
        if k > self.order:
            raise IndexError(f"coefficient t^{k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self) -> str:
        terms = [f"{c}*t^{k}" for k, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.order + 1})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order of a series")
        return TruncatedSeries._raw(list(self.coeffs[: order + 1]), order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if c]

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries.zero(0)
        return TruncatedSeries._raw(
            [k * self.coeffs[k] for k in range(1, self.order + 1)], self.order - 1
        )

    def scale(self, c) -> "TruncatedSeries":
        c = as_fraction(c)
        return TruncatedSeries._raw([c * a for a in self.coeffs], self.order)

    def to_strings(self) -> list[str]:
        return [format_fraction(c) for c in self.coeffs]

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return series_add(self, TruncatedSeries.monomial(0, self.order, other))
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(_ONE / as_fraction(other))
        return series_div(self, other)

    def __pow__(self, n: int):
        if n < 0:
            return series_div(TruncatedSeries.one(self.order), self ** (-n))
        result = TruncatedSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = series_mul(result, base)
            n >>= 1
            if n:
                base = series_mul(base, base)
        return result

    def __call__(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return series_compose(self, inner)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries._raw([a.coeffs[k] + b.coeffs[k] for k in range(n + 1)], n)


def _mul_coeffs(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    # skips zero coefficients: the series of interest are 1/2 or 1/3 dense
    out = [_ZERO] * (n + 1)
    bnz = [(j, y) for j, y in enumerate(b[: n + 1]) if y]
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        lim = n - i
        for j, y in bnz:
            if j > lim:
                break
            out[i + j] += x * y
    return out


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries._raw(_mul_coeffs(a.coeffs, b.coeffs, n), n)


def series_div(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """Exact quotient ``q`` with ``den * q == num`` through the common order."""
    d0 = den.coeffs[0]
    if not d0:
        raise ZeroConstantTerm("denominator series has zero constant term")
    n = min(num.order, den.order)
    inv0 = _ONE / d0
    dnz = [(j, y) for j, y in enumerate(den.coeffs[1 : n + 1], start=1) if y]
    q: list[Fraction] = []
    for k in range(n + 1):
        s = num.coeffs[k]
        for j, y in dnz:
            if j > k:
                break
            qk = q[k - j]
            if qk:
                s -= y * qk
        q.append(s * inv0)
    return TruncatedSeries._raw(q, n)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(t))``; needs ``inner(0) == 0``.

    Horner evaluation over series.  The result order is ``inner.order`` when
    ``inner`` has valuation 1, and grows with higher valuations up to what
    ``outer.order`` can support.
    """
    if inner.coeffs[0]:
        raise NonzeroConstantTerm("inner series must have zero constant term")
    v = inner.valuation()
    if v is None:
        return TruncatedSeries.monomial(0, inner.order, outer.coeffs[0])
    # t^{v*(outer.order+1)} is the first place the unknown tail of outer shows up
    n = min(inner.order, v * (outer.order + 1) - 1)
    inner_c = inner.coeffs[: n + 1]
    acc = [_ZERO] * (n + 1)
    top = min(outer.order, n // v)
    acc[0] = outer.coeffs[top]
    for k in range(top - 1, -1, -1):
        acc = _mul_coeffs(acc, inner_c, n)
        acc[0] += outer.coeffs[k]
    return TruncatedSeries._raw(acc, n)


def series_reversion(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse by Lagrange inversion.

    ``[t^n] r = (1/n) [w^{n-1}] (w / s(w))^n``.
    """
    if s.order < 1 or s.coeffs[0] or not s.coeffs[1]:
        raise NotReversible("need s(0) = 0 and s'(0) != 0")
    n = s.order
    # s(w)/w to order n-1
    shifted = TruncatedSeries._raw(list(s.coeffs[1:]), n - 1)
    phi = series_div(TruncatedSeries.one(n - 1), shifted)
    r = [_ZERO] * (n + 1)
    power = TruncatedSeries.one(n - 1)
    for k in range(1, n + 1):
        power = series_mul(power, phi)
        r[k] = power.coeffs[k - 1] / k
    return TruncatedSeries._raw(r, n)


def rational_function_expand(P: "Polynomial", Q: "Polynomial", order: int) -> TruncatedSeries:
    if Q.is_zero() or not Q.coeffs[0]:
        raise PoleAtOrigin("Q(0) must be nonzero")
    return series_div(P.to_series(order), Q.to_series(order))


class Polynomial:
    """Dense polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (_ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (_ZERO,) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            return Polynomial(c * x for x in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        n = self.degree + other.degree
        return Polynomial(_mul_coeffs(self.coeffs + (_ZERO,) * (n - self.degree),
                                      other.coeffs + (_ZERO,) * (n - other.degree), n))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial([1])
        for _ in range(n):
            result = result * self
        return result

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def to_series(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs[: order + 1], order)


def multifactorial(M: int, n: int, r: int) -> Fraction:
    """``(Mn - r)!!...!`` with ``M`` marks, i.e. ``prod_{m=1}^{n} (M m - r)``."""
    if M <= 0 or n < 0 or not 0 < r < M:
        raise InvalidParameters(f"need M >= 1, n >= 0 and 0 < r < M (got M={M}, n={n}, r={r})")
    return Fraction(prod(M * m - r for m in range(1, n + 1)))


def p_polynomials(n_max: int) -> list[Polynomial]:
    """The polynomials ``p_0 .. p_{n_max}`` generating the expansion at rho.

    ``p_0 = t^3``, ``p_1 = -t^2`` and for ``n >= 2``::

        p_n = (t^3 - 1)/3 * p_{n-1}' - (n + 5)/6 * t^2 p_{n-1} - (n-1)(n-2)/144 * t p_{n-2}
    """
    if n_max < 1:
        raise InvalidParameters("n_max must be >= 1")
    t = Polynomial.monomial(1)
    t2 = Polynomial.monomial(2)
    cubic = Polynomial([Fraction(-1, 3), 0, 0, Fraction(1, 3)])
    ps = [Polynomial.monomial(3), Polynomial.monomial(2, -1)]
    for n in range(2, n_max + 1):
        prev, prev2 = ps[-1], ps[-2]
        ps.append(
            cubic * prev.derivative()
            - t2 * prev * Fraction(n + 5, 6)
            - t * prev2 * Fraction((n - 1) * (n - 2), 144)
        )
    return ps
