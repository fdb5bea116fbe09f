"""Truncated formal power series with exact rational coefficients.

This is the generating-function route to the higher-order Bell and
Stirling numbers: the order-m Bell EGF arises from exp(x) by m
applications of f -> exp(f - 1), and the k-column Stirling EGF is the
k-th power of (previous-order Bell EGF - 1) divided by k!.  Extracting
n! times a coefficient must always give an integer; a fractional result
signals a computation bug and is raised loudly, never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import factorial

__all__ = [
    "Series",
    "IntegralityError",
    "zero_series",
    "make_series",
    "series_exp",
    "series_compose",
    "exp_x",
    "bell_egf",
    "bell_from_egf",
    "stirling_egf",
    "stirling_from_egf",
]


class IntegralityError(ArithmeticError):
    """n! times a coefficient that should count something was not an integer."""


@dataclass(frozen=True)
class Series:
    """Power series truncated beyond a fixed order N; coeffs has length N+1."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise ValueError(f"coefficient {n} outside truncation order {self.order}")
        return self.coeffs[n]

    def integer_coefficient(self, n: int) -> int:
        """Return n! * c_n, which must be an exact integer."""
        value = self.coefficient(n) * factorial(n)
        if value.denominator != 1:
            raise IntegralityError(
                f"{factorial(n)} * coefficient({n}) = {value} is not an integer"
            )
        return value.numerator

    def _match(self, other: "Series") -> None:
        if self.order != other.order:
            raise ValueError(f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, Series):
            self._match(other)
            return Series(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        return Series((self.coeffs[0] + other,) + self.coeffs[1:])

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        if isinstance(other, Series):
            self._match(other)
            return Series(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Series):
            self._match(other)
            n = self.order
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
            return Series(tuple(out))
        factor = Fraction(other)
        return Series(tuple(c * factor for c in self.coeffs))

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (Fraction(1) / Fraction(other))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def zero_series(order: int) -> Series:
    return Series((Fraction(0),) * (order + 1))


def make_series(values, order: int) -> Series:
    """Series of the given order from a coefficient prefix, zero-padded."""
    coeffs = [Fraction(v) for v in values][: order + 1]
    coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
    return Series(tuple(coeffs))


def exp_x(order: int) -> Series:
    """The plain exponential series, c_n = 1/n!."""
    return Series(tuple(Fraction(1, factorial(n)) for n in range(order + 1)))


def series_exp(f: Series) -> Series:
    """exp(f) for a series with zero constant term.

    Computed as the finite sum of f^k / k! for k = 0..N, which is exact
    at every truncated order because f has valuation >= 1.
    """
    if f.coeffs[0] != 0:
        raise ValueError("series_exp requires a zero constant term")
    n = f.order
    acc = make_series([1], n)
    power = make_series([1], n)
    for k in range(1, n + 1):
        power = power * f
        if power.is_zero():
            break
        acc = acc + power / factorial(k)
    return acc


def series_compose(outer: Series, inner: Series) -> Series:
    """outer(inner(x)) for inner with zero constant term (Horner scheme)."""
    if inner.coeffs[0] != 0:
        raise ValueError("series_compose requires the inner constant term to be zero")
    outer._match(inner)
    result = make_series([outer.coeffs[-1]], outer.order)
    for c in reversed(outer.coeffs[:-1]):
        result = result * inner + c
    return result


@lru_cache(maxsize=None)
def bell_egf(m: int, order: int) -> Series:
    """EGF of the order-m Bell numbers, truncated at the given order.

    Order 0 is exp(x); each further order applies f -> exp(f - 1).
    """
    if m < 0 or order < 1:
        raise ValueError(f"bell_egf requires m >= 0 and order >= 1, got ({m}, {order})")
    series = exp_x(order)
    for _ in range(m):
        series = series_exp(series - 1)
    return series


def bell_from_egf(n: int, m: int, order: int | None = None) -> int:
    """Order-m Bell number as n! times a coefficient of the iterated EGF."""
    if n < 0 or m < 0:
        raise ValueError(f"bell_from_egf requires n >= 0 and m >= 0, got ({n}, {m})")
    if order is None:
        order = max(n, 1)
    if order < n:
        raise ValueError(f"truncation order {order} below requested coefficient {n}")
    return bell_egf(m, order).integer_coefficient(n)


@lru_cache(maxsize=None)
def stirling_egf(k: int, m: int, order: int) -> Series:
    """EGF of the k-th column of the order-m Stirling triangle.

    Equals (previous-order Bell EGF - 1)^k / k!; n! times its n-th
    coefficient counts the k-sets in the order-m partition set.
    """
    if k < 1 or m < 1:
        raise ValueError(f"stirling_egf requires k >= 1 and m >= 1, got ({k}, {m})")
    if k > order:
        raise ValueError(f"column {k} exceeds truncation order {order}")
    base = bell_egf(m - 1, order) - 1
    power = make_series([1], order)
    for _ in range(k):
        power = power * base
    return power / factorial(k)


def stirling_from_egf(n: int, k: int, m: int, order: int | None = None) -> int:
    """Order-m Stirling number S(n, k) extracted from the column EGF."""
    if order is None:
        order = max(n, 1)
    if order < n:
        raise ValueError(f"truncation order {order} below requested coefficient {n}")
    if n < k:
        return 0
    return stirling_egf(k, m, order).integer_coefficient(n)
