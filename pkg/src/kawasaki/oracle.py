"""Brute-force ground truth by monomial counting.

Nothing here imports the engine: agreement with it is evidence, not a tautology.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

__all__ = [
    "OracleUndefined",
    "chi_weighted",
    "count_invariant_monomials",
    "count_weighted_monomials",
    "hypersurface_difference",
    "koszul_chi",
]


class OracleUndefined(ValueError):
    pass


@lru_cache(maxsize=None)
def count_weighted_monomials(weights: tuple[int, ...], a: int) -> int:
    """#{alpha >= 0 : sum alpha_i w_i = a}, by enumerating all but the last exponent."""
    weights = tuple(weights)
    if a < 0:
        raise OracleUndefined("oracle undefined for negative degree; use hypersurface_difference")
    *head, last = weights
    ranges = [range(a // w + 1) for w in head]
    count = 0
    for alpha in product(*ranges):
        rest = a - sum(x * w for x, w in zip(alpha, head))
        if rest >= 0 and rest % last == 0:
            count += 1
    return count


def _monomials(n_vars: int, a: int):
    if n_vars == 1:
        yield (a,)
        return
    for first in range(a + 1):
        for rest in _monomials(n_vars - 1, a - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _character_histogram(group_order: int, action_weights: tuple[int, ...], a: int) -> tuple:
    hist = [0] * group_order
    for alpha in _monomials(len(action_weights), a):
        hist[sum(x * t for x, t in zip(alpha, action_weights)) % group_order] += 1
    return tuple(hist)


def count_invariant_monomials(group_order: int, action_weights, a: int, shift: int = 0) -> int:
    """Degree-a monomials x^alpha with sum alpha_i t_i + shift = 0 mod m."""
    if a < 0:
        raise OracleUndefined("oracle undefined for negative degree")
    m = group_order
    hist = _character_histogram(m, tuple(action_weights), a)
    return hist[(-shift) % m]


def chi_weighted(weights: tuple[int, ...], a: int) -> int:
    """chi(P(w), O(a)) for any integer a.

    H^0 is counted directly; the only other nonzero group, H^n, is spanned by
    the Cech monomials with every exponent negative, i.e. it is counted by
    degree -a - sum(w) sections.
    """
    weights = tuple(weights)
    n = len(weights) - 1
    total = count_weighted_monomials(weights, a) if a >= 0 else 0
    dual = -a - sum(weights)
    if dual >= 0:
        total += (-1) ** n * count_weighted_monomials(weights, dual)
    return total


def hypersurface_difference(weights: tuple[int, ...], d: int, a: int) -> int:
    """chi(Y, O(a)) - chi(Y, O(a - d))."""
    return chi_weighted(weights, a) - chi_weighted(weights, a - d)


def koszul_chi(weights: tuple[int, ...], degrees, a: int) -> int:
    """chi(Y, O(a) (x) prod_j (1 - O(-d_j))), expanded by inclusion-exclusion."""
    degrees = list(degrees)
    total = 0
    for mask in range(1 << len(degrees)):
        chosen = [d for i, d in enumerate(degrees) if mask >> i & 1]
        total += (-1) ** len(chosen) * chi_weighted(weights, a - sum(chosen))
    return total
