"""Supported orbifolds and the components of their inertia orbifolds."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, prod

from .cyclotomic import Cyclotomic, euler_phi, root_of_unity

__all__ = [
    "CyclicQuotient",
    "InvariantViolation",
    "Sector",
    "WeightedProjective",
    "enumerate_group_fixed_loci",
    "enumerate_sectors",
    "fixed_locus",
    "normal_data",
]


class InvariantViolation(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class WeightedProjective:
    """The weighted projective stack P(w_0, ..., w_n)."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights:
            raise ValueError("weighted projective space needs at least one weight")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")

    @classmethod
    def projective(cls, n: int) -> WeightedProjective:
        return cls((1,) * (n + 1))

    @property
    def dim(self) -> int:
        return len(self.weights) - 1

    @property
    def weight_product(self) -> int:
        return prod(self.weights)

    def __str__(self):
        return "P(" + ",".join(map(str, self.weights)) + ")"


@dataclass(frozen=True)
class Sector:
    """A Kawasaki stratum of P(w): the element zeta_r^k and its fixed coordinates."""

    order: int
    exponent: int
    fixed: tuple[int, ...]
    fixed_weights: tuple[int, ...]
    multiplicity: int

    @property
    def zeta(self) -> Cyclotomic:
        return root_of_unity(self.order, self.exponent)

    @property
    def dim(self) -> int:
        return len(self.fixed) - 1

    @property
    def is_identity(self) -> bool:
        return self.order == 1

    def label(self) -> str:
        s = ",".join(map(str, self.fixed))
        return f"r={self.order} k={self.exponent} S={{{s}}} m={self.multiplicity}"


def enumerate_sectors(space: WeightedProjective) -> list[Sector]:
    """All sectors of P(w), identity first, then ordered by (r, k).

    One sector per primitive pair (r, k) with r dividing some weight.
    """
    w = space.weights
    orders = sorted({r for wi in w for r in range(1, wi + 1) if wi % r == 0})
    sectors = []
    for r in orders:
        fixed = tuple(i for i, wi in enumerate(w) if wi % r == 0)
        fw = tuple(w[i] for i in fixed)
        m = reduce(gcd, fw)
        for k in range(r):
            if (r == 1 and k == 0) or (r > 1 and gcd(k, r) == 1):
                sectors.append(Sector(r, k, fixed, fw, m))
    return sectors


def sector_count(space: WeightedProjective) -> int:
    """Sum of phi(r) over the orders r dividing some weight."""
    orders = {r for wi in space.weights for r in range(1, wi + 1) if wi % r == 0}
    return sum(euler_phi(r) for r in orders)


def fixed_locus(sector: Sector, space: WeightedProjective) -> WeightedProjective:
    return WeightedProjective(tuple(space.weights[i] for i in sector.fixed))


def normal_data(sector: Sector, space: WeightedProjective) -> list[tuple[int, int]]:
    """(w_j, w_j*k mod r) for every coordinate j moved by the sector's element."""
    out = []
    fixed = set(sector.fixed)
    for j, wj in enumerate(space.weights):
        if j in fixed:
            continue
        char = (wj * sector.exponent) % sector.order
        if char == 0:
            raise InvariantViolation(
                f"normal direction {j} of sector {sector.label()} has trivial character"
            )
        out.append((wj, char))
    return out


@dataclass(frozen=True)
class CyclicQuotient:
    """[P^n / mu_m] with the generator acting on x_i by zeta_m^(t_i)."""

    group_order: int
    action_weights: tuple[int, ...]

    def __post_init__(self):
        if self.group_order < 1:
            raise ValueError("group order must be positive")
        if not self.action_weights:
            raise ValueError("quotient needs at least one coordinate")
        object.__setattr__(
            self, "action_weights", tuple(int(t) % self.group_order for t in self.action_weights)
        )

    @property
    def dim(self) -> int:
        return len(self.action_weights) - 1

    def __str__(self):
        acts = ",".join(map(str, self.action_weights))
        return f"[P{self.dim}/mu_{self.group_order}; act={acts}]"


def enumerate_group_fixed_loci(
    quotient: CyclicQuotient, t: int
) -> list[tuple[int, tuple[int, ...]]]:
    """Fixed locus of g^t on P^n as (residue v, coordinates i with t*t_i = v mod m).

    Each entry is the linear subspace spanned by those coordinates; the
    entries are ordered by residue and partition the coordinate set.
    """
    m = quotient.group_order
    if not 0 <= t < m:
        raise ValueError(f"group element index {t} outside 0..{m - 1}")
    classes: dict[int, list[int]] = {}
    for i, ti in enumerate(quotient.action_weights):
        classes.setdefault((t * ti) % m, []).append(i)
    return [(v, tuple(idx)) for v, idx in sorted(classes.items())]
