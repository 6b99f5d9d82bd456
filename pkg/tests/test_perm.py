import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

from collar_algebra import perm
from collar_algebra.perm import Permutation, generate
from collar_algebra.smallgroups import a5_x_a5, alternating_group, symmetric_group


def sympy_group(g):
    gens = [SymPerm(list(p.images)) for p in g.generators] or [SymPerm(list(range(g.degree)))]
    return PermutationGroup(gens)


def perms(degree):
    return st.permutations(range(degree)).map(lambda xs: Permutation(tuple(xs)))


def test_permutation_validates_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_product_convention():
    a = Permutation.from_cycles(3, (0, 1))
    b = Permutation.from_cycles(3, (1, 2))
    # (a * b)(i) = a(b(i))
    assert (a * b)(1) == a(b(1))
    assert (a * ~a).is_identity()


def test_generate_examples():
    assert generate([Permutation.from_cycles(2, (0, 1))]).order == 2
    s3 = generate([Permutation.from_cycles(3, (0, 1, 2)), Permutation.from_cycles(3, (0, 1))])
    assert s3.order == 6
    assert generate([], degree=4).order == 1


def test_generate_cap():
    with pytest.raises(perm.GroupTooLarge):
        generate(symmetric_group(7).generators, cap=1000)


def test_commutator_subgroup_examples():
    assert perm.commutator_subgroup(symmetric_group(3)).order == 3
    a5 = alternating_group(5)
    assert perm.commutator_subgroup(a5) == a5
    triv = generate([], degree=3)
    assert perm.commutator_subgroup(triv).is_trivial()


def test_derived_series_examples():
    assert [h.order for h in perm.derived_series(symmetric_group(3))] == [6, 3, 1]
    assert [h.order for h in perm.derived_series(alternating_group(5))] == [60]
    assert [h.order for h in perm.derived_series(generate([], degree=2))] == [1]
    assert [h.order for h in perm.derived_series(symmetric_group(4))] == [24, 12, 4, 1]


def test_perfect_core_and_predicates():
    s5 = symmetric_group(5)
    assert perm.perfect_core(s5).order == 60
    assert not perm.is_hypo_abelian(s5)
    assert perm.is_perfect(alternating_group(5))
    assert perm.is_hypo_abelian(symmetric_group(4))
    assert perm.perfect_core(a5_x_a5()).order == 3600


@settings(max_examples=60, deadline=None)
@given(st.lists(perms(6), min_size=1, max_size=3))
def test_against_sympy(gens):
    g = generate(gens, degree=6)
    ref = sympy_group(g)
    assert g.order == ref.order()
    assert 720 % g.order == 0
    series = perm.derived_series(g)
    ref_series = ref.derived_series()
    assert [h.order for h in series] == [h.order() for h in ref_series]
    assert perm.is_perfect(g) == ref.is_perfect
    assert perm.is_hypo_abelian(g) == ref.is_solvable


@settings(max_examples=40, deadline=None)
@given(st.lists(perms(5), min_size=1, max_size=2))
def test_group_closure_axioms(gens):
    g = generate(gens, degree=5)
    rng = random.Random(len(g.elements))
    els = list(g.elements)
    assert g.identity() in g
    for _ in range(30):
        x, y = rng.choice(els), rng.choice(els)
        assert x * y in g
        assert ~x in g


@settings(max_examples=30, deadline=None)
@given(st.lists(perms(5), min_size=1, max_size=2))
def test_commutator_subgroup_is_normal_and_contains_commutators(gens):
    g = generate(gens, degree=5)
    d = perm.commutator_subgroup(g)
    assert perm.is_normal(g, d)
    els = sorted(g.elements, key=lambda p: p.images)[:12]
    for a in els:
        for b in els:
            assert perm.commutator(a, b) in d


def test_normal_subgroups_s4():
    orders = sorted(n.order for n in perm.normal_subgroups(symmetric_group(4)))
    assert orders == [1, 4, 12, 24]


def test_quotient_and_kernel():
    s4 = symmetric_group(4)
    v4 = [n for n in perm.normal_subgroups(s4) if n.order == 4][0]
    q = perm.quotient(s4, v4)
    assert q.image.order == 6
    assert perm.kernel(s4, q) == v4


def test_quotient_rejects_non_normal():
    s3 = symmetric_group(3)
    h = perm.subgroup(s3, [Permutation.from_cycles(3, (0, 1))])
    with pytest.raises(perm.NotNormal):
        perm.quotient(s3, h)


def test_extension_lemmas_on_a5xa5():
    g = a5_x_a5()
    for n in perm.normal_subgroups(g):
        rep = perm.check_extension_lemmas(g, n)
        assert rep.ok, rep.failures
    assert len(perm.normal_subgroups(g)) == 4


def test_extension_report_flags_a_violation():
    # S4 over A4: the quotient C2 is hypo-Abelian and so is A4, so S4 must be
    rep = perm.check_extension_lemmas(symmetric_group(4), alternating_group(4))
    assert rep.kernel_hypo_abelian and rep.quotient_hypo_abelian and rep.group_hypo_abelian
    assert rep.ok


def test_composition_lemma_a5xa5_chain():
    g = a5_x_a5()
    normals = sorted(perm.normal_subgroups(g), key=lambda n: n.order)
    trivial, factor = normals[0], normals[1]
    rep = perm.check_composition_lemma(g, trivial, factor)
    assert rep["ok"] and rep["composite_kernel_perfect"]


def test_json_roundtrip():
    g = symmetric_group(4)
    assert perm.group_from_json(perm.group_to_json(g)) == g
