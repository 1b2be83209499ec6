"""Per-sector characteristic classes: traced Chern characters, Todd classes,
traced K-theoretic Euler classes of normal bundles, and stacky integration.

Trace convention: the element zeta_r^k of a sector acts on the fiber of O(a)
over its fixed stratum by zeta_r^(k*a); a character shift c multiplies this by
zeta_r^(k*c).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .cyclotomic import Cyclotomic, root_of_unity
from .geometry import InvariantViolation, Sector, WeightedProjective, fixed_locus, normal_data
from .series import (
    Series,
    coefficient,
    euler_trace_factor,
    exp_coefficients,
    exp_linear,
    todd_factor,
)

__all__ = [
    "KClass",
    "KTerm",
    "SectorClass",
    "assemble_integrand",
    "euler_class_of_normal",
    "integrate",
    "todd_of_stratum",
    "trace_char",
]


@dataclass(frozen=True, order=True)
class KTerm:
    """``coefficient * O(degree)`` twisted by the character ``char_shift``."""

    coefficient: int
    degree: int
    char_shift: int = 0


class KClass:
    """A formal integer combination of character-twisted line bundles.

    Terms with equal (degree, char_shift) are merged and zero terms dropped,
    so two KClasses compare equal iff they have the same canonical terms.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc: Counter = Counter()
        for t in terms:
            acc[(t.degree, t.char_shift)] += t.coefficient
        self.terms = tuple(
            KTerm(c, d, s) for (d, s), c in sorted(acc.items()) if c != 0
        )

    @classmethod
    def line(cls, degree: int, char_shift: int = 0) -> KClass:
        return cls([KTerm(1, degree, char_shift)])

    @classmethod
    def koszul(cls, degrees) -> KClass:
        """Lambda_{-1} E^* = prod_j (1 - O(-d_j)) for E = sum_j O(d_j)."""
        degrees = list(degrees)
        terms = []
        for size in range(len(degrees) + 1):
            for subset in combinations(degrees, size):
                terms.append(KTerm((-1) ** size, -sum(subset)))
        return cls(terms)

    def __add__(self, other: KClass) -> KClass:
        return KClass(self.terms + other.terms)

    def __neg__(self) -> KClass:
        return KClass([KTerm(-t.coefficient, t.degree, t.char_shift) for t in self.terms])

    def __sub__(self, other: KClass) -> KClass:
        return self + (-other)

    def __mul__(self, other: KClass) -> KClass:
        return KClass(
            KTerm(a.coefficient * b.coefficient, a.degree + b.degree, a.char_shift + b.char_shift)
            for a in self.terms
            for b in other.terms
        )

    def __eq__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"KClass({format_kclass(self)!r})"


def format_kclass(v: KClass) -> str:
    if not v.terms:
        return "0"
    out = ""
    for i, t in enumerate(v.terms):
        mono = f"O({t.degree})" if not t.char_shift else f"O({t.degree};{t.char_shift})"
        c = t.coefficient
        if abs(c) != 1:
            mono = f"{abs(c)}*{mono}"
        if i == 0:
            out = ("-" if c < 0 else "") + mono
        else:
            out += (" - " if c < 0 else " + ") + mono
    return out


def trace_exponent(term: KTerm, sector: Sector) -> int:
    return (sector.exponent * (term.degree + term.char_shift)) % sector.order


def trace_char(term: KTerm, sector: Sector) -> tuple[Cyclotomic, Series]:
    """Eigenvalue of the sector's element on O(a) and the traced Chern character.

    The coefficient of ``term`` is not applied.
    """
    eigenvalue = root_of_unity(sector.order, trace_exponent(term, sector))
    return eigenvalue, exp_linear(term.degree, eigenvalue, sector.dim)


def trace_kclass(v: KClass, sector: Sector) -> Series:
    total = None
    for term in v:
        _, s = trace_char(term, sector)
        s = s * term.coefficient
        total = s if total is None else total + s
    return total if total is not None else Series.constant(0, sector.dim)


@lru_cache(maxsize=None)
def todd_of_stratum(sector: Sector) -> Series:
    """Td of P(w_S) from the Euler sequence: product of the Todd factors of O(w_i)."""
    t = sector.dim
    out = Series.constant(1, t)
    for w in sector.fixed_weights:
        out = out * todd_factor(w, t)
    return out


@lru_cache(maxsize=None)
def euler_class_of_normal(sector: Sector, space: WeightedProjective) -> tuple[Series, ...]:
    """Traced factors 1 - zeta^(-k w_j) exp(-w_j H) of Lambda_{-1} N^*."""
    factors = []
    for w, char in normal_data(sector, space):
        conormal = root_of_unity(sector.order, -char)
        f = euler_trace_factor(w, conormal, sector.dim)
        if f[0].is_zero():
            raise InvariantViolation(
                f"normal factor for weight {w} of sector {sector.label()} is not invertible"
            )
        factors.append(f)
    return tuple(factors)


@lru_cache(maxsize=None)
def _inverse_normal_product(sector: Sector, space: WeightedProjective) -> Series:
    out = Series.constant(1, sector.dim)
    for f in euler_class_of_normal(sector, space):
        out = out * f.invert()
    return out.promoted(sector.order)


def integrate(stratum: WeightedProjective, s: Series) -> Cyclotomic:
    """Stacky integral over P(w_S): top coefficient divided by prod w_S."""
    dim = stratum.dim
    if s.truncation < dim:
        raise ValueError(
            f"series truncated at H^{s.truncation} is too shallow for a {dim}-dimensional stratum"
        )
    return coefficient(s, dim) / stratum.weight_product


@dataclass(frozen=True)
class SectorClass:
    """The integrand Td * ch(Tr(V)) * Tr(Lambda E^m*) / Tr(Lambda N*) on one sector.

    ``obstruction_factors`` are the traced Koszul factors of the moving part of
    the obstruction bundle; they sit with a negative sign inside the virtual
    normal bundle, so they multiply rather than divide.
    """

    sector: Sector
    stratum: WeightedProjective
    numerator: Series
    denominator_factors: tuple[Series, ...] = ()
    obstruction_factors: tuple[Series, ...] = field(default=())
    _inverse_denominator: Series | None = field(default=None, compare=False, repr=False)

    def series(self) -> Series:
        out = self.numerator
        for f in self.obstruction_factors:
            out = out * f
        if self._inverse_denominator is not None:
            return out * self._inverse_denominator
        for f in self.denominator_factors:
            out = out * f.invert()
        return out

    def integral(self) -> Cyclotomic:
        if self._inverse_denominator is None:
            return integrate(self.stratum, self.series())
        out = self.numerator
        for f in self.obstruction_factors:
            out = out * f
        dim = self.stratum.dim
        top = out.top_of_product(self._inverse_denominator, dim)
        return top / self.stratum.weight_product


def assemble_integrand(
    v: KClass,
    sector: Sector,
    space: WeightedProjective,
    extra_numerator: KClass | None = None,
    extra_denominator=(),
) -> SectorClass:
    """Build the sector integrand for V, optionally with virtual corrections.

    ``extra_numerator`` is traced and multiplied in (used for the Koszul class
    of the fixed obstruction degrees). ``extra_denominator`` lists moving
    obstruction summands as (degree, character exponent mod r); each must have
    a nontrivial character.
    """
    t = sector.dim
    numerator = trace_kclass(v, sector) * todd_of_stratum(sector)
    if extra_numerator is not None:
        numerator = numerator * trace_kclass(extra_numerator, sector)
    obstruction = []
    for degree, char in extra_denominator:
        if char % sector.order == 0:
            raise InvariantViolation(
                f"fixed direction in virtual normal bundle: degree {degree} at sector {sector.label()}"
            )
        obstruction.append(
            euler_trace_factor(degree, root_of_unity(sector.order, -char), t)
        )
    return SectorClass(
        sector=sector,
        stratum=fixed_locus(sector, space),
        numerator=numerator,
        denominator_factors=euler_class_of_normal(sector, space),
        obstruction_factors=tuple(obstruction),
        _inverse_denominator=_inverse_normal_product(sector, space),
    )


@lru_cache(maxsize=None)
def lefschetz_kernel(group_order: int, action_weights, t: int, residue: int) -> Series:
    """Td(P(V_v)) / Tr(Lambda_{-1} N^*) for the fixed subspace of g^t with character v.

    Characters are those of g^t on the coordinate functions x_i; the fixed
    component is spanned by the coordinates with character ``residue``, and a
    moved coordinate j contributes the conormal character (t*t_j - v).
    """
    m = group_order
    chars = [(t * tj) % m for tj in action_weights]
    dim = chars.count(residue) - 1
    out = Series.constant(1, dim)
    for c in chars:
        if c == residue:
            out = out * todd_factor(1, dim)
            continue
        char = (c - residue) % m
        if char == 0:
            raise InvariantViolation(f"moved coordinate of g^{t} has trivial character")
        out = out * euler_trace_factor(1, root_of_unity(m, char), dim).invert()
    return out.promoted(m)


def lefschetz_component(
    degree: int, shift: int, t: int, group_order: int, action_weights, residue: int
) -> Cyclotomic:
    """Contribution of one fixed linear subspace P(V_v) to the Lefschetz number of g^t."""
    kernel = lefschetz_kernel(group_order, tuple(action_weights), t, residue)
    dim = kernel.truncation
    eigen = root_of_unity(group_order, t * shift + residue * degree)
    return kernel.dot_rational(exp_coefficients(degree, dim)) * eigen
