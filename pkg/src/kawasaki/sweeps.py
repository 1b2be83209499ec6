"""Oracle sweeps behind ``kawasaki verify --sweep`` and the acceptance suite.

Each check returns ``(number_of_cases, failures)``; a failure is a short
string naming the case. Spaces are enumerated up to reordering of weights,
which does not change any Euler characteristic.
"""
from __future__ import annotations

import random
from itertools import combinations_with_replacement
from math import comb

from . import oracle
from .engine import (
    ObstructionSetup,
    chi_fake,
    chi_kawasaki,
    chi_lefschetz,
    chi_virtual_direct,
    chi_virtual_strata,
)
from .geometry import CyclicQuotient, WeightedProjective

THEOREM_SEED = 20100401


def weight_vectors(max_dim: int = 3, max_weight: int = 6):
    for n in range(max_dim + 1):
        yield from combinations_with_replacement(range(1, max_weight + 1), n + 1)


def cyclic_quotients(max_order: int = 6, max_dim: int = 3):
    for m in range(1, max_order + 1):
        for n in range(max_dim + 1):
            for act in combinations_with_replacement(range(m), n + 1):
                yield CyclicQuotient(m, act)


def kawasaki_vs_oracle(max_dim=3, max_weight=6, max_degree=30):
    cases, failures = 0, []
    for w in weight_vectors(max_dim, max_weight):
        space = WeightedProjective(w)
        for a in range(max_degree + 1):
            cases += 1
            got = chi_kawasaki(space, a).value
            want = oracle.count_weighted_monomials(w, a)
            if got != want:
                failures.append(f"P{w} O({a}): kawasaki={got} oracle={want}")
    return cases, failures


def manifold_degeneration(max_dim=4, max_degree=20):
    cases, failures = 0, []
    for n in range(max_dim + 1):
        space = WeightedProjective.projective(n)
        for a in range(max_degree + 1):
            cases += 1
            want = comb(a + n, n)
            fake = chi_fake(space, a)
            true = chi_kawasaki(space, a).value
            if not fake == true == want:
                failures.append(f"P^{n} O({a}): fake={fake} kawasaki={true} binomial={want}")
    return cases, failures


def random_setups(count=200, seed=THEOREM_SEED, max_dim=3, max_weight=4, max_degrees=2,
                  max_obstruction=6, max_twist=6):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(0, max_dim)
        weights = tuple(rng.randint(1, max_weight) for _ in range(n + 1))
        degrees = tuple(rng.randint(1, max_obstruction) for _ in range(rng.randint(1, max_degrees)))
        a = rng.randint(-max_twist, max_twist)
        yield ObstructionSetup(WeightedProjective(weights), degrees), a


def virtual_theorem(count=200, seed=THEOREM_SEED):
    cases, failures = 0, []
    for setup, a in random_setups(count, seed):
        cases += 1
        direct = chi_virtual_direct(setup, a)
        strata = chi_virtual_strata(setup, a)
        name = f"{setup.space} E={list(setup.degrees)} O({a})"
        if direct.value != strata.value:
            failures.append(f"{name}: direct={direct.value} strata={strata.value}")
            continue
        for d, s in zip(direct.sectors, strata.sectors):
            if d.sector != s.sector or d.contribution != s.contribution:
                failures.append(f"{name}: sector {s.sector.label()} differs")
    return cases, failures


GEOMETRIC_CHECKS = (
    ((1, 1, 1), 3, 0, 0),  # plane cubic: genus one
    ((1, 1, 1), 3, 1, 3),
    ((1, 1, 1, 1), 4, 0, 2),  # quartic K3
)


def virtual_geometry():
    cases, failures = 0, []
    for w, d, a, want in GEOMETRIC_CHECKS:
        cases += 1
        got = chi_virtual_direct(ObstructionSetup(WeightedProjective(w), (d,)), a).value
        diff = oracle.hypersurface_difference(w, d, a)
        if not got == diff == want:
            failures.append(f"P{w} E=O({d}) O({a}): virtual={got} oracle={diff} expected={want}")
    return cases, failures


def lefschetz_vs_oracle(max_order=6, max_dim=3, max_degree=12):
    cases, failures = 0, []
    for q in cyclic_quotients(max_order, max_dim):
        for a in range(max_degree + 1):
            for shift in range(q.group_order):
                cases += 1
                got = chi_lefschetz(q, a, shift).value
                want = oracle.count_invariant_monomials(q.group_order, q.action_weights, a, shift)
                if got != want:
                    failures.append(f"{q} O({a}) shift={shift}: lefschetz={got} oracle={want}")
    return cases, failures


CRITERIA = (
    ("criterion-1 kawasaki-vs-oracle", kawasaki_vs_oracle),
    ("criterion-2 manifold-degeneration", manifold_degeneration),
    ("criterion-4 virtual-theorem", virtual_theorem),
    ("criterion-5 virtual-geometry", virtual_geometry),
    ("criterion-6 lefschetz-vs-oracle", lefschetz_vs_oracle),
)
