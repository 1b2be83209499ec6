"""Truncated power series in the hyperplane class H with cyclotomic coefficients."""
from __future__ import annotations

from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .cyclotomic import Cyclotomic, promote

__all__ = [
    "NonUnitSeriesError",
    "Series",
    "coefficient",
    "euler_trace_factor",
    "exp_linear",
    "todd_factor",
]


class NonUnitSeriesError(ArithmeticError):
    """Inversion of a series whose constant term vanishes."""


class Series:
    """A polynomial in H kept modulo H^(truncation+1).

    Binary operations on series of different truncations truncate to the
    smaller one.
    """

    __slots__ = ("truncation", "coeffs")

    def __init__(self, coeffs, truncation: int | None = None):
        coeffs = [Cyclotomic.coerce(c) for c in coeffs]
        if truncation is None:
            truncation = len(coeffs) - 1
        if truncation < 0:
            raise ValueError("truncation must be non-negative")
        zero = Cyclotomic.from_rational(0)
        coeffs = coeffs[: truncation + 1]
        coeffs += [zero] * (truncation + 1 - len(coeffs))
        self.truncation = truncation
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, value, truncation: int) -> Series:
        return cls([value], truncation)

    def truncate(self, truncation: int) -> Series:
        if truncation > self.truncation:
            raise ValueError(f"cannot extend truncation {self.truncation} to {truncation}")
        return Series(self.coeffs[: truncation + 1], truncation)

    def __getitem__(self, d):
        return self.coeffs[d]

    def __len__(self):
        return len(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Series):
            return other
        return Series.constant(other, self.truncation)

    def __add__(self, other):
        other = self._coerce(other)
        t = min(self.truncation, other.truncation)
        return Series([a + b for a, b in zip(self.coeffs[: t + 1], other.coeffs)], t)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.truncation)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def promoted(self, order: int) -> Series:
        """Same series with every coefficient moved into Q(zeta_order)."""
        return Series([promote(c, order) for c in self.coeffs], self.truncation)

    def top_of_product(self, other: Series, d: int) -> Cyclotomic:
        """Coefficient of H^d in self * other, without forming the product."""
        acc = Cyclotomic.from_rational(0)
        for i in range(d + 1):
            if self.coeffs[i] and other.coeffs[d - i]:
                acc = acc + self.coeffs[i] * other.coeffs[d - i]
        return acc

    def dot_rational(self, scalars) -> Cyclotomic:
        """sum_i coeffs[d - i] * scalars[i] with d = len(scalars) - 1."""
        d = len(scalars) - 1
        acc = Cyclotomic.from_rational(0)
        for i, c in enumerate(scalars):
            if c and self.coeffs[d - i]:
                acc = acc + self.coeffs[d - i] * c
        return acc

    def __mul__(self, other):
        if not isinstance(other, Series):
            c = Cyclotomic.coerce(other)
            return Series([x * c for x in self.coeffs], self.truncation)
        t = min(self.truncation, other.truncation)
        a, b = self.coeffs, other.coeffs
        out = []
        for d in range(t + 1):
            acc = None
            for i in range(d + 1):
                if a[i] and b[d - i]:
                    term = a[i] * b[d - i]
                    acc = term if acc is None else acc + term
            out.append(acc if acc is not None else 0)
        return Series(out, t)

    __rmul__ = __mul__

    def invert(self) -> Series:
        """Multiplicative inverse by solving for coefficients term by term."""
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise NonUnitSeriesError("non-unit series: zero constant term")
        inv0 = c0.invert()
        out = [inv0]
        for d in range(1, self.truncation + 1):
            acc = None
            for i in range(1, d + 1):
                if self.coeffs[i]:
                    term = self.coeffs[i] * out[d - i]
                    acc = term if acc is None else acc + term
            out.append(-(acc * inv0) if acc is not None else Cyclotomic.from_rational(0))
        return Series(out, self.truncation)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.invert()
        return self * Cyclotomic.coerce(other).invert()

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.truncation == other.truncation and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __repr__(self):
        terms = ", ".join(c.format() for c in self.coeffs)
        return f"Series([{terms}], truncation={self.truncation})"


def coefficient(s: Series, d: int) -> Cyclotomic:
    if not 0 <= d <= s.truncation:
        raise IndexError(f"degree {d} outside 0..{s.truncation}")
    return s.coeffs[d]


@lru_cache(maxsize=None)
def exp_coefficients(a: int, truncation: int) -> tuple:
    return tuple(mpq(a**d, factorial(d)) for d in range(truncation + 1))


def exp_linear(a: int, zeta, truncation: int) -> Series:
    """zeta * exp(a H)."""
    zeta = Cyclotomic.coerce(zeta)
    return Series([zeta * c for c in exp_coefficients(a, truncation)], truncation)


@lru_cache(maxsize=None)
def todd_factor(w: int, truncation: int) -> Series:
    """wH / (1 - exp(-wH)), obtained by inverting (1 - exp(-wH)) / (wH)."""
    if w < 1:
        raise ValueError("todd weight must be positive")
    base = Series(
        [mpq((-w) ** d, factorial(d + 1)) for d in range(truncation + 1)], truncation
    )
    return base.invert()


def euler_trace_factor(w: int, zeta_inv_char, truncation: int) -> Series:
    """1 - chi * exp(-wH): one factor of the traced K-theoretic Euler class."""
    return 1 - exp_linear(-w, zeta_inv_char, truncation)
