"""Exact arithmetic in the cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as a vector of rationals of length phi(N),
read as a polynomial in zeta reduced modulo the cyclotomic polynomial Phi_N.
Coordinates are ``gmpy2.mpq`` internally; rational results leave the module as
:class:`fractions.Fraction`. Rationals embed as order-1 cyclotomics.

    >>> z = root_of_unity(3, 1)
    >>> (1 - z).invert() == (1 - z * z) / 3
    True
    >>> rational_value(z + z * z)
    Fraction(-1, 1)
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC

from gmpy2 import mpq

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "euler_phi",
    "promote",
    "rational_value",
    "root_of_unity",
]

Poly = tuple  # tuple of rationals, lowest degree first

_ZERO = mpq(0)
_ONE = mpq(1)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _poly_sub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [_ZERO] * (n - len(p))
    for i, b in enumerate(q):
        p[i] -= b
    return _trim(p)


def _poly_divmod(p, q):
    """Long division over Q; ``q`` must be nonzero."""
    p = _trim(p)
    q = _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return [], p
    quot = [_ZERO] * (len(p) - len(q) + 1)
    lead = q[-1]
    rem = list(p)
    for shift in range(len(p) - len(q), -1, -1):
        c = rem[shift + len(q) - 1] / lead
        quot[shift] = c
        if c:
            for j, b in enumerate(q):
                rem[shift + j] -= c * b
    return _trim(quot), _trim(rem[: len(q) - 1])


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Poly:
    """Return Phi_n as a tuple of rational coefficients, constant term first.

    Computed by exact division of x^n - 1 by Phi_d over the proper divisors d.
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    num = [mpq(-1)] + [_ZERO] * (n - 1) + [_ONE]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple:
    """x^e mod Phi_n for e = 0..n-1, each as a coordinate tuple of length phi(n)."""
    phi = euler_phi(n)
    modulus = cyclotomic_polynomial(n)
    rows = []
    cur = [_ZERO] * phi
    cur[0] = _ONE
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and fold x^phi back using the monic modulus
        top = cur[-1]
        cur = [_ZERO] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * modulus[i]
    return tuple(rows)


class Cyclotomic:
    """An immutable element of Q(zeta_N), ``N = order``."""

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords):
        coords = tuple(mpq(c) for c in coords)
        phi = euler_phi(order)
        if len(coords) > phi:
            coords = _reduce(order, coords)
        elif len(coords) < phi:
            coords = coords + (_ZERO,) * (phi - len(coords))
        self.order = order
        self.coords = coords

    @classmethod
    def _raw(cls, order, coords):
        obj = object.__new__(cls)
        obj.order = order
        obj.coords = coords
        return obj

    @classmethod
    def from_rational(cls, value) -> Cyclotomic:
        return cls._raw(1, (mpq(value),))

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def coerce(value) -> Cyclotomic:
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, _RationalABC)):
            return Cyclotomic._raw(1, (mpq(value),))
        raise TypeError(f"cannot coerce {type(value).__name__} to Cyclotomic")

    def _align(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.coerce(other)
        if self.order == other.order:
            return self, other
        lcm = self.order * other.order // gcd(self.order, other.order)
        return promote(self, lcm), promote(other, lcm)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic._raw(a.order, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, tuple(-x for x in self.coords))

    def __sub__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic._raw(a.order, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            if isinstance(other, (int, _RationalABC)):
                c = mpq(other)
                return Cyclotomic._raw(self.order, tuple(x * c for x in self.coords))
            return NotImplemented
        if other.order == 1:
            c = other.coords[0]
            return Cyclotomic._raw(self.order, tuple(x * c for x in self.coords))
        if self.order == 1:
            c = self.coords[0]
            return Cyclotomic._raw(other.order, tuple(x * c for x in other.coords))
        a, b = self._align(other)
        n = a.order
        phi = len(a.coords)
        acc = [_ZERO] * (2 * phi - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        acc[i + j] += x * y
        return Cyclotomic._raw(n, _reduce(n, acc))

    __rmul__ = __mul__

    def invert(self) -> Cyclotomic:
        """Multiplicative inverse via the extended Euclidean algorithm.

        Raises ZeroDivisionError for the zero element.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.order == 1 or self.is_rational():
            return Cyclotomic._raw(self.order, (1 / self.coords[0],) + self.coords[1:])
        modulus = list(cyclotomic_polynomial(self.order))
        # invariant: s * a == r  (mod modulus)
        r0, r1 = modulus, _trim(self.coords)
        s0, s1 = [], [_ONE]
        while len(r1) > 1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant since Phi_N is irreducible
        c = r1[0]
        return Cyclotomic(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            c = 1 / mpq(other)
            return Cyclotomic._raw(self.order, tuple(x * c for x in self.coords))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        return Cyclotomic.coerce(other) * self.invert()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.invert() ** (-exponent)
        result = Cyclotomic._raw(self.order, _unit(self.order))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return a.coords == b.coords

    __hash__ = None  # equal values of different orders are not canonicalized

    def __repr__(self):
        return f"Cyclotomic({self.order}, {self.format()!r})"

    def format(self, var: str = "z") -> str:
        """Render as ``c0 + c1*z + c2*z^2 ...``, skipping zero coordinates."""
        parts = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            if i == 0:
                mono = str(c)
            else:
                power = var if i == 1 else f"{var}^{i}"
                mag = abs(c)
                mono = power if mag == 1 else f"{mag}*{power}"
                mono = ("-" + mono) if c < 0 else mono
            parts.append(mono)
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text


@lru_cache(maxsize=None)
def _unit(order):
    phi = euler_phi(order)
    return (_ONE,) + (_ZERO,) * (phi - 1)


def _reduce(n, coeffs):
    table = _power_table(n)
    phi = euler_phi(n)
    out = list(coeffs[:phi]) + [_ZERO] * max(0, phi - len(coeffs))
    for e in range(phi, len(coeffs)):
        c = coeffs[e]
        if c:
            row = table[e % n]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def root_of_unity(n: int, k: int) -> Cyclotomic:
    """zeta_n^k in Q(zeta_n); ``k`` is taken mod ``n``."""
    if n < 1:
        raise ValueError(f"root of unity order must be positive, got {n}")
    return Cyclotomic._raw(n, _power_table(n)[k % n])


def promote(a: Cyclotomic, m: int) -> Cyclotomic:
    """Image of ``a`` under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^(M/N)."""
    a = Cyclotomic.coerce(a)
    if m % a.order:
        raise ValueError(f"cannot promote order {a.order} to {m}: not a multiple")
    if m == a.order:
        return a
    if a.order == 1:
        return Cyclotomic._raw(m, (a.coords[0],) + (_ZERO,) * (euler_phi(m) - 1))
    step = m // a.order
    table = _power_table(m)
    phi = euler_phi(m)
    out = [_ZERO] * phi
    for i, c in enumerate(a.coords):
        if c:
            row = table[(i * step) % m]
            for j in range(phi):
                if row[j]:
                    out[j] += c * row[j]
    return Cyclotomic._raw(m, tuple(out))


def rational_value(a) -> Fraction | None:
    """The rational value of ``a``, or None when ``a`` is not rational."""
    a = Cyclotomic.coerce(a)
    if a.is_rational():
        c = a.coords[0]
        return Fraction(int(c.numerator), int(c.denominator))
    return None
