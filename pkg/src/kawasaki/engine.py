"""Kawasaki's formula, its fake part, the averaged Lefschetz formula, and both
sides of the virtual Kawasaki formula in the zero-locus model.

In the zero-locus model the virtual space X is cut out of P(w) by a generic
section of E = O(d_1) + ... + O(d_c); its virtual structure sheaf pushes
forward to the Koszul class prod_j (1 - O(-d_j)) on the ambient space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .classes import KClass, assemble_integrand, lefschetz_component
from .cyclotomic import Cyclotomic, promote, rational_value, root_of_unity
from .geometry import (
    CyclicQuotient,
    InvariantViolation,
    Sector,
    WeightedProjective,
    enumerate_group_fixed_loci,
    enumerate_sectors,
)

__all__ = [
    "EulerResult",
    "IntegralityError",
    "ObstructionSetup",
    "SectorReport",
    "chi_fake",
    "chi_kawasaki",
    "chi_lefschetz",
    "chi_virtual_direct",
    "chi_virtual_strata",
]


class IntegralityError(InvariantViolation):
    """A formula total was not a rational integer; carries the breakdown."""

    def __init__(self, message, reports):
        super().__init__(message)
        self.reports = reports


@dataclass(frozen=True)
class ObstructionSetup:
    """Zero locus of a section of a split bundle E = sum O(d_j) on ``space``."""

    space: WeightedProjective
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if any(d < 1 for d in self.degrees):
            raise ValueError("obstruction degrees must be positive")

    @property
    def virtual_dim(self) -> int:
        return self.space.dim - len(self.degrees)

    def koszul(self) -> KClass:
        return KClass.koszul(self.degrees)


@dataclass(frozen=True)
class SectorReport:
    sector: Sector
    contribution: Cyclotomic
    fixed_degrees: tuple[int, ...] = ()
    moving_degrees: tuple[int, ...] = ()

    @property
    def multiplicity(self) -> int:
        return self.sector.multiplicity

    @property
    def effective_integral(self) -> Cyclotomic:
        """The integral with m_mu pulled out: contribution == effective / m_mu."""
        return self.contribution * self.sector.multiplicity

    def label(self) -> str:
        return "sector " + self.sector.label()


@dataclass(frozen=True)
class LefschetzReport:
    """Lefschetz number of g^t, summed over its fixed linear subspaces."""

    element: int
    group_order: int
    fixed_loci: tuple[tuple[int, tuple[int, ...]], ...]
    contribution: Cyclotomic

    def label(self) -> str:
        loci = " ".join("{" + ",".join(map(str, c)) + "}" for _, c in self.fixed_loci)
        return f"element t={self.element} fixed={loci}"


@dataclass(frozen=True)
class EulerResult:
    value: int | Fraction
    sectors: tuple = field(default=())

    def __int__(self):
        return int(self.value)


def _common_order(values) -> int:
    n = 1
    for v in values:
        n = n * v.order // gcd(n, v.order)
    return n


def _total(reports, scale=1, require_integer=True):
    contribs = [r.contribution for r in reports]
    order = _common_order(contribs)
    total = Cyclotomic.from_rational(0)
    for c in contribs:
        total = total + promote(c, order)
    total = total * Fraction(scale)
    value = rational_value(total)
    if value is None:
        raise IntegralityError(f"non-rational total {total.format()}", tuple(reports))
    if require_integer:
        if value.denominator != 1:
            raise IntegralityError(f"non-integer total {value}", tuple(reports))
        value = int(value)
    # same total with m_mu pulled out of each sector
    if reports and isinstance(reports[0], SectorReport):
        alt = sum((r.effective_integral / r.multiplicity for r in reports), Cyclotomic.from_rational(0))
        if alt * Fraction(scale) != total:
            raise InvariantViolation("multiplicity bookkeeping disagrees with stacky total")
    return value


def _as_kclass(v) -> KClass:
    if isinstance(v, KClass):
        return v
    if isinstance(v, int):
        return KClass.line(v)
    raise TypeError(f"expected KClass or degree, got {type(v).__name__}")


def sector_contributions(space: WeightedProjective, v) -> list[SectorReport]:
    v = _as_kclass(v)
    return [
        SectorReport(sector, assemble_integrand(v, sector, space).integral())
        for sector in enumerate_sectors(space)
    ]


def chi_kawasaki(space: WeightedProjective, v) -> EulerResult:
    """chi(P(w), V) as the sum over sectors of stacky integrals.

    Raises IntegralityError (with the breakdown) if the total is not an integer.
    """
    reports = sector_contributions(space, v)
    return EulerResult(_total(reports), tuple(reports))


def chi_fake(space: WeightedProjective, v) -> Fraction:
    """Identity-sector term of Kawasaki's formula: int ch(V) Td(T)."""
    identity = enumerate_sectors(space)[0]
    value = rational_value(assemble_integrand(_as_kclass(v), identity, space).integral())
    if value is None:
        raise InvariantViolation("fake Euler characteristic is not rational")
    return value


def chi_virtual_direct(setup: ObstructionSetup, v) -> EulerResult:
    """chi(X, V|_X (x) O^vir) = chi(Y, V (x) Lambda_{-1} E^*)."""
    return chi_kawasaki(setup.space, _as_kclass(v) * setup.koszul())


def split_degrees(setup: ObstructionSetup, sector: Sector):
    """Partition obstruction degrees into those fixed and moved by the sector's element."""
    fixed = tuple(d for d in setup.degrees if (d * sector.exponent) % sector.order == 0)
    moving = tuple(d for d in setup.degrees if (d * sector.exponent) % sector.order != 0)
    return fixed, moving


def chi_virtual_strata(setup: ObstructionSetup, v) -> EulerResult:
    """Sum over strata of fake Euler characteristics with virtual corrections.

    On each sector the fixed obstruction degrees give the stratum's own
    Koszul class (numerator); the moving ones form the negative part of the
    virtual normal bundle N - E^m.
    """
    v = _as_kclass(v)
    space = setup.space
    reports = []
    for sector in enumerate_sectors(space):
        fixed, moving = split_degrees(setup, sector)
        integrand = assemble_integrand(
            v,
            sector,
            space,
            extra_numerator=KClass.koszul(fixed),
            extra_denominator=[(d, (d * sector.exponent) % sector.order) for d in moving],
        )
        reports.append(SectorReport(sector, integrand.integral(), fixed, moving))
    return EulerResult(_total(reports), tuple(reports))


@lru_cache(maxsize=None)
def _unshifted_lefschetz(quotient: CyclicQuotient, t: int, degree: int) -> Cyclotomic:
    total = Cyclotomic.from_rational(0)
    for residue, _ in enumerate_group_fixed_loci(quotient, t):
        total = total + lefschetz_component(
            degree, 0, t, quotient.group_order, quotient.action_weights, residue
        )
    return total


def lefschetz_number(quotient: CyclicQuotient, t: int, degree: int, shift: int = 0) -> LefschetzReport:
    """Trace of g^t on H^*(P^n, O(degree)) twisted by ``shift``, via fixed loci.

    The shift scales every fixed-locus term by the same root of unity.
    """
    m = quotient.group_order
    loci = enumerate_group_fixed_loci(quotient, t)
    total = _unshifted_lefschetz(quotient, t, degree) * root_of_unity(m, t * shift)
    return LefschetzReport(t, m, tuple(loci), total)


def chi_lefschetz(quotient: CyclicQuotient, degree, shift: int = 0) -> EulerResult:
    """chi([P^n/mu_m], O(a)) as the group average of Lefschetz numbers.

    ``degree`` may also be a KClass whose character shifts add to ``shift``.
    """
    v = _as_kclass(degree)
    m = quotient.group_order
    reports = []
    for t in range(m):
        contrib = Cyclotomic.from_rational(0)
        loci = None
        for term in v:
            rep = lefschetz_number(quotient, t, term.degree, shift + term.char_shift)
            loci = rep.fixed_loci
            contrib = contrib + rep.contribution * term.coefficient
        if loci is None:
            loci = tuple(enumerate_group_fixed_loci(quotient, t))
        reports.append(LefschetzReport(t, m, loci, contrib))
    return EulerResult(_total(reports, scale=Fraction(1, m)), tuple(reports))
