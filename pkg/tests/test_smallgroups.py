from collections import Counter
from itertools import combinations

import pytest

from collar_algebra import smallgroups
from collar_algebra.smallgroups import GROUP_COUNTS, regular_representation, small_groups
from groupiso import are_isomorphic, invariants


@pytest.fixture(scope="module")
def catalogue():
    return small_groups(24)


def test_counts_match_known_enumeration(catalogue):
    counts = Counter(g.order for _, g in catalogue)
    assert dict(counts) == GROUP_COUNTS


def test_pairwise_non_isomorphic(catalogue):
    by_order = {}
    for name, g in catalogue:
        by_order.setdefault(g.order, []).append((name, g))
    for order, groups in by_order.items():
        for (n1, g1), (n2, g2) in combinations(groups, 2):
            if invariants(g1) != invariants(g2):
                continue
            assert not are_isomorphic(g1, g2), (n1, n2)


def test_isomorphism_helper_finds_isomorphisms():
    # D8 as a rule group and the symmetries of a square on four points
    from collar_algebra.perm import Permutation, generate

    square = generate([Permutation.from_cycles(4, (0, 1, 2, 3)), Permutation.from_cycles(4, (0, 2))])
    d8 = regular_representation(smallgroups.dihedral(8))
    assert are_isomorphic(square, d8)
    assert not are_isomorphic(d8, regular_representation(smallgroups.dicyclic(8)))


def test_rule_groups_are_groups():
    for name, g in smallgroups._catalogue():
        e = smallgroups._identity(g)
        els = g.elements[:8]
        for x in els:
            for y in els:
                for z in els[:3]:
                    assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)), name
            assert g.mul(e, x) == x


def test_large_fixtures():
    assert smallgroups.alternating_group(5).order == 60
    assert smallgroups.symmetric_group(5).order == 120
    assert smallgroups.a5_x_a5().order == 3600


def test_catalogue_refuses_large_orders():
    with pytest.raises(ValueError):
        small_groups(25)
