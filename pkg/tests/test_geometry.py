from math import gcd
from functools import reduce

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kawasaki.cyclotomic import euler_phi
from kawasaki.geometry import (
    CyclicQuotient,
    WeightedProjective,
    enumerate_group_fixed_loci,
    enumerate_sectors,
    fixed_locus,
    normal_data,
    sector_count,
)

P = lambda *w: WeightedProjective(w)


def summary(space):
    return [(s.order, s.exponent, s.fixed, s.multiplicity) for s in enumerate_sectors(space)]


def test_sector_examples():
    assert summary(P(1, 1)) == [(1, 0, (0, 1), 1)]
    assert summary(P(1, 2)) == [(1, 0, (0, 1), 1), (2, 1, (1,), 2)]
    assert summary(P(1, 2, 3)) == [
        (1, 0, (0, 1, 2), 1),
        (2, 1, (1,), 2),
        (3, 1, (2,), 3),
        (3, 2, (2,), 3),
    ]
    assert summary(P(2, 2)) == [(1, 0, (0, 1), 2), (2, 1, (0, 1), 2)]


def test_fixed_locus_examples():
    identity, r2 = enumerate_sectors(P(1, 2))
    assert fixed_locus(enumerate_sectors(P(1, 2, 3))[0], P(1, 2, 3)) == P(1, 2, 3)
    assert fixed_locus(r2, P(1, 2)) == P(2)
    sector = enumerate_sectors(P(1, 2, 2))[1]
    assert fixed_locus(sector, P(1, 2, 2)) == P(2, 2)
    assert sector.dim == 1


def test_normal_data_examples():
    identity, r2 = enumerate_sectors(P(1, 2))
    assert normal_data(r2, P(1, 2)) == [(1, 1)]
    assert normal_data(identity, P(1, 2)) == []
    r3k2 = enumerate_sectors(P(1, 2, 3))[3]
    assert (r3k2.order, r3k2.exponent) == (3, 2)
    assert normal_data(r3k2, P(1, 2, 3)) == [(1, 2), (2, 1)]


def test_zero_weight_rejected():
    with pytest.raises(ValueError, match="weights must be positive"):
        P(1, 0)


weights = st.lists(st.integers(1, 12), min_size=1, max_size=5).map(tuple)


@given(weights)
def test_sector_invariants(w):
    space = WeightedProjective(w)
    sectors = enumerate_sectors(space)
    orders = {r for x in w for r in range(1, x + 1) if x % r == 0}
    assert len(sectors) == sum(euler_phi(r) for r in orders) == sector_count(space)
    assert sectors[0].is_identity
    assert sectors[0].multiplicity == reduce(gcd, w)
    keys = [(s.order, s.exponent) for s in sectors]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for s in sectors:
        assert s.fixed == tuple(i for i, x in enumerate(w) if x % s.order == 0)
        assert s.fixed
        for i in s.fixed:
            assert s.zeta ** w[i] == 1
        for j, x in enumerate(w):
            if j not in s.fixed:
                assert s.zeta**x != 1
        assert all(char != 0 for _, char in normal_data(s, space))


@pytest.mark.parametrize("n, N", [(1, 2), (2, 3), (3, 5), (1, 6)])
def test_top_weight_sectors_have_full_multiplicity(n, N):
    space = WeightedProjective((1,) * n + (N,))
    top = [s for s in enumerate_sectors(space) if s.order == N]
    assert len(top) == euler_phi(N)
    assert all(s.multiplicity == N and s.fixed == (n,) for s in top)


def test_group_fixed_loci_examples():
    q = CyclicQuotient(2, (0, 1))
    assert enumerate_group_fixed_loci(q, 0) == [(0, (0, 1))]
    assert enumerate_group_fixed_loci(q, 1) == [(0, (0,)), (1, (1,))]
    q = CyclicQuotient(2, (0, 0, 1))
    assert enumerate_group_fixed_loci(q, 1) == [(0, (0, 1)), (1, (2,))]
    with pytest.raises(ValueError):
        enumerate_group_fixed_loci(q, 2)


@given(st.integers(1, 8), st.lists(st.integers(0, 20), min_size=1, max_size=5))
def test_group_fixed_loci_partition_coordinates(m, act):
    q = CyclicQuotient(m, tuple(act))
    for t in range(m):
        loci = enumerate_group_fixed_loci(q, t)
        coords = sorted(i for _, c in loci for i in c)
        assert coords == list(range(len(act)))
        assert sum(len(c) for _, c in loci) == q.dim + 1
