import random

import pytest
from hypothesis import given, settings, strategies as st

from collar_algebra import freeprod, thompson
from collar_algebra.freeprod import IDENTITY, FPElement, partial_conjugation
from collar_algebra.thompson import A, B, C, element_of_order

seeds = st.integers(0, 2**32)


def word(seed, **kw):
    return freeprod.random_fp_element(random.Random(seed), **kw)


def test_reduction_examples():
    g, h, x = A, B, C
    a = FPElement([(1, g)])
    assert a * IDENTITY == a
    assert FPElement([(1, g)]) * FPElement([(1, ~g)]) == IDENTITY
    lhs = FPElement([(1, g), (2, x)]) * FPElement([(2, ~x), (1, h)])
    assert lhs == FPElement.letter(1, g * h)


def test_constructor_reduces():
    w = FPElement([(1, A), (1, ~A), (2, C), (2, thompson.IDENTITY), (2, C)])
    assert w.syllables == ((2, C * C),)
    with pytest.raises(ValueError):
        FPElement([(3, A)])


@settings(max_examples=150, deadline=None)
@given(seeds, seeds, seeds)
def test_group_axioms(s1, s2, s3):
    a, b, c = word(s1), word(s2), word(s3)
    assert (a * b) * c == a * (b * c)
    assert (a * ~a).is_identity()
    # concatenating syllables and reducing gives the same product
    assert FPElement(a.syllables + b.syllables) == a * b


@settings(max_examples=150, deadline=None)
@given(seeds, seeds, st.sampled_from([2, 3, 5]))
def test_partial_conjugation_is_automorphism(s1, s2, p):
    u = element_of_order(p)
    a, b = word(s1), word(s2)
    assert partial_conjugation(u, a * b) == partial_conjugation(u, a) * partial_conjugation(u, b)
    assert partial_conjugation(~u, partial_conjugation(u, a)) == a


def test_partial_conjugation_examples():
    u = element_of_order(3)
    g = FPElement.letter(1, A)
    assert partial_conjugation(u, g) == g
    x = FPElement.letter(2, C)
    assert partial_conjugation(u, x) == FPElement([(1, u), (2, C), (1, ~u)])
    w = FPElement([(1, A), (2, C), (1, B)])
    assert partial_conjugation(u, w) == FPElement([(1, A * u), (2, C), (1, ~u * B)])


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_pure_p1_words_fixed_for_every_power(seed):
    rng = random.Random(seed)
    w = FPElement.letter(1, thompson.random_tree_pair(rng))
    for k in range(-3, 4):
        assert partial_conjugation(element_of_order(5), w, k) == w


def test_power_matches_iteration():
    rng = random.Random(1)
    u = element_of_order(5)
    for _ in range(20):
        w = freeprod.random_fp_element(rng)
        for k in range(6):
            assert partial_conjugation(u, w, k) == freeprod.apply_partial_conjugation_iterated(u, w, k)


def test_automorphism_order_checks():
    rng = random.Random(0)
    sample = [freeprod.random_fp_element(rng) for _ in range(100)]
    rep2 = freeprod.automorphism_order_check(element_of_order(2), sample)
    assert rep2["order"] == 2 and rep2["ok"]
    rep3 = freeprod.automorphism_order_check(element_of_order(3), sample, witness=FPElement.letter(2, A))
    assert rep3["order"] == 3 and rep3["ok"]
    with pytest.raises(freeprod.InfiniteOrder):
        freeprod.automorphism_order_check(A, sample, cap=20)


def test_tuple_automorphism():
    assert freeprod.tuple_automorphism((), ()) == ()
    t = (FPElement.letter(1, A), FPElement.letter(1, B))
    assert freeprod.tuple_automorphism((2, 3), t) == t
    with pytest.raises(ValueError):
        freeprod.tuple_automorphism((2, 3), (IDENTITY,))


def test_tuple_automorphism_order_six():
    rng = random.Random(5)
    tuples = [freeprod.random_tuple(rng, 2) for _ in range(100)]
    for t in tuples:
        assert freeprod.tuple_automorphism((2, 3), t, 6) == t
    witness = (FPElement.letter(2, C), FPElement.letter(2, C))
    for k in range(1, 6):
        assert freeprod.tuple_automorphism((2, 3), witness, k) != witness


def _factor_map_hom(fmap, m):
    def hom(t):
        out = [IDENTITY] * m
        for i, j in enumerate(fmap):
            if j is not None:
                out[j] = out[j] * t[i]
        return tuple(out)
    return hom


def test_straightening_examples():
    ident = freeprod.straightening_pattern(freeprod.probe_images(_factor_map_hom([0, 1], 2), 2))
    assert ident == {"pattern": [[True, False], [False, True]], "classification": "permutation"}
    swap = freeprod.straightening_pattern(freeprod.probe_images(_factor_map_hom([1, 0], 2), 2))
    assert swap["pattern"] == [[False, True], [True, False]]
    assert swap["classification"] == "permutation"
    crush = freeprod.straightening_pattern(freeprod.probe_images(_factor_map_hom([0, 1, None], 2), 3))
    assert crush["pattern"] == [[True, False], [False, True], [False, False]]
    assert crush["classification"] == "injection"


def test_automorphisms_of_s_cubed_straighten():
    # factor permutations composed with partial conjugations per factor
    rng = random.Random(2)
    for _ in range(10):
        perm = list(range(3))
        rng.shuffle(perm)
        seq = (2, 3, 5)

        def hom(t, perm=perm):
            moved = [IDENTITY] * 3
            for i, j in enumerate(perm):
                moved[j] = t[i]
            return freeprod.tuple_automorphism(seq, tuple(moved), 1)

        res = freeprod.straightening_pattern(freeprod.probe_images(hom, 3))
        assert res["classification"] == "permutation"


def test_diagonal_map_is_other():
    def diag(t):
        return (t[0], t[0])

    res = freeprod.straightening_pattern(freeprod.probe_images(diag, 1), 2)
    assert res["classification"] == "other"


def test_json_roundtrip():
    w = FPElement([(1, A), (2, C), (1, B)])
    assert freeprod.from_json(freeprod.to_json(w)) == w
