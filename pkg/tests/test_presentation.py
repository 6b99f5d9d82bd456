import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from collar_algebra import presentation as pr
from collar_algebra.presentation import (
    BS_GROUP, BS_PRESENTATION, BS_T, BS_X, BSElement, Dyadic, Presentation, SemidirectData,
    free_reduce, normal_form, parse_word,
)

Z = Presentation(("a",))
ZB = Presentation(("b",))


def z2_data():
    return SemidirectData(("a",), ("b",), {("b", "a"): parse_word("a")}, {("b", "a"): parse_word("a")})


def klein_data():
    return SemidirectData(("a",), ("b",), {("b", "a"): parse_word("a^-1")}, {("b", "a"): parse_word("a^-1")})


# Z^2 x| Z with z acting by [[1,1],[0,1]]
HEIS_K = Presentation(("a", "c"), (parse_word("a^-1 c^-1 a c"),))
HEIS = SemidirectData(
    ("a", "c"), ("z",),
    {("z", "a"): parse_word("a"), ("z", "c"): parse_word("a c")},
    {("z", "a"): parse_word("a"), ("z", "c"): parse_word("a^-1 c")},
)


def heis_eval(w):
    # concrete model: (v, n) with (v1, n1)(v2, n2) = (v1 + M^n1 v2, n1 + n2)
    x, y, n = 0, 0, 0
    for g, e in w:
        if g == "z":
            n += e
        else:
            dx, dy = (e, 0) if g == "a" else (0, e)
            x, y = x + dx + n * dy, y + dy
    return x, y, n


def klein_eval(w):
    m, n = 0, 0
    for g, e in w:
        if g == "b":
            n += e
        else:
            m += e * (-1) ** n
    return m, n


def words(alphabet, max_size=40):
    return st.lists(st.tuples(st.sampled_from(alphabet), st.sampled_from([1, -1])), max_size=max_size)


def test_parse_and_print():
    assert parse_word("a b^-1 c^3") == (("a", 1), ("b", -1), ("c", 1), ("c", 1), ("c", 1))
    assert pr.word_to_str(parse_word("a^-2")) == "a^-1 a^-1"
    assert pr.word_to_str(()) == "1"
    with pytest.raises(pr.PresentationError):
        parse_word("a^")
    with pytest.raises(pr.PresentationError):
        pr.check_word([("a", 2)])


def test_free_reduce_examples():
    assert free_reduce(parse_word("a a^-1 b")) == (("b", 1),)
    assert free_reduce(parse_word("a b b^-1 a^-1")) == ()
    assert free_reduce(()) == ()


@settings(max_examples=200, deadline=None)
@given(words("ab", 30))
def test_free_reduce_idempotent_and_inverse(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert pr.concat(w, pr.inverse_word(w)) == ()


def test_presentation_rejects_unknown_generators():
    with pytest.raises(pr.PresentationError):
        Presentation(("a",), (parse_word("b"),))
    with pytest.raises(pr.PresentationError):
        Presentation(("a", "a"))


def test_semidirect_examples():
    z2 = pr.semidirect_presentation(Z, ZB, z2_data())
    assert z2.generators == ("a", "b")
    assert z2.relators == (parse_word("b a b^-1 a^-1"),)
    klein = pr.semidirect_presentation(Z, ZB, klein_data())
    assert klein.relators == (parse_word("b a b^-1 a"),)


def test_trivial_action_is_direct_product():
    k = Presentation(("a", "c"), (parse_word("a a"),))
    q = Presentation(("b", "d"), (parse_word("b b b"),))
    trivial = {(b, a): ((a, 1),) for b in q.generators for a in k.generators}
    sd = SemidirectData(k.generators, q.generators, trivial)
    assert pr.semidirect_presentation(k, q, sd) == pr.direct_product_presentation(k, q)


def test_relator_count():
    p = pr.semidirect_presentation(HEIS_K, Presentation(("z",)), HEIS)
    assert len(p.relators) == len(HEIS_K.relators) + 2 * 1


def test_slide_relators_hold_in_models():
    p = pr.semidirect_presentation(HEIS_K, Presentation(("z",)), HEIS)
    for r in p.relators:
        assert heis_eval(r) == (0, 0, 0)
    p = pr.semidirect_presentation(Z, ZB, klein_data())
    for r in p.relators:
        assert klein_eval(r) == (0, 0)


def test_normal_form_examples():
    assert normal_form(parse_word("b a"), klein_data()) == parse_word("a^-1 b")
    assert normal_form(parse_word("b a b^-1"), klein_data()) == parse_word("a^-1")
    assert normal_form((), klein_data()) == ()


def test_normal_form_missing_inverse_action():
    sd = SemidirectData(("a",), ("b",), {("b", "a"): parse_word("a^-1")})
    with pytest.raises(pr.PresentationError, match=r"b\^-1, a"):
        normal_form(parse_word("b^-1 a"), sd)


@settings(max_examples=300, deadline=None)
@given(words("acz"))
def test_normal_form_against_model(w):
    nf = normal_form(w, HEIS)
    assert pr.is_normal(nf, HEIS)
    assert heis_eval(nf) == heis_eval(w)
    assert normal_form(nf, HEIS) == nf
    assert pr.q_image(nf, HEIS) == pr.q_image(w, HEIS)


@settings(max_examples=300, deadline=None)
@given(words("ab"))
def test_normal_form_klein(w):
    nf = normal_form(w, klein_data())
    assert pr.is_normal(nf, klein_data())
    assert klein_eval(nf) == klein_eval(w)
    assert normal_form(nf, klein_data()) == nf


def test_verify_hom_bs():
    assert pr.verify_hom(BS_PRESENTATION, BS_GROUP, {"t": BS_T, "x": BS_X}) == {"ok": True}
    bad = pr.verify_hom(BS_PRESENTATION, BS_GROUP, {"t": BS_T, "x": BS_T})
    assert bad["ok"] is False and bad["index"] == 0
    with pytest.raises(pr.UnmappedGenerator):
        pr.verify_hom(BS_PRESENTATION, BS_GROUP, {"t": BS_T})


def test_bs_projection_example():
    w = parse_word("x^5 t^3 x^-2")
    g = pr.evaluate(w, BS_GROUP, {"t": BS_T, "x": BS_X})
    assert pr.bs_project(g) == 3


def _matrix(g):
    return ((Fraction(1, 2) ** g.k, g.a.as_fraction()), (Fraction(0), Fraction(1)))


def _matmul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2))


bs_elements = st.builds(
    lambda k, m, e: BSElement(k, Dyadic(m, e)), st.integers(-6, 6), st.integers(-50, 50), st.integers(-6, 6)
)


@settings(max_examples=300, deadline=None)
@given(bs_elements, bs_elements, bs_elements)
def test_bs_against_fraction_matrices(g, h, k):
    assert _matrix(g * h) == _matmul(_matrix(g), _matrix(h))
    assert (g * h) * k == g * (h * k)
    assert (g * ~g).is_identity()
    assert pr.bs_project(g * h) == pr.bs_project(g) + pr.bs_project(h)


@settings(max_examples=200, deadline=None)
@given(st.integers(-1000, 1000), st.integers(-8, 8), st.integers(-1000, 1000), st.integers(-8, 8))
def test_dyadic_against_fraction(m1, e1, m2, e2):
    a, b = Dyadic(m1, e1), Dyadic(m2, e2)
    assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
    assert (a - b).as_fraction() == a.as_fraction() - b.as_fraction()
    assert a.shift(3).as_fraction() == a.as_fraction() * 8


def test_gt_tower_examples():
    g1 = pr.gt_tower_presentation(BS_PRESENTATION, "t", 1)
    assert g1.generators == ("t", "x", "t1")
    assert g1.relators[-1] == parse_word("t1^-1 t1^-1 t^-1 t1 t")
    g2 = pr.gt_tower_presentation(BS_PRESENTATION, "t", 2)
    assert g2.generators == ("t", "x", "t1", "t2")
    assert len(g2.relators) == len(BS_PRESENTATION.relators) + 2
    assert g2.relators[-1] == parse_word("t2^-1 t2^-1 t1^-1 t2 t1")
    assert pr.gt_tower_presentation(BS_PRESENTATION, "t", 0) == BS_PRESENTATION


def test_gt_tower_names_continue_numbering():
    p0 = Presentation(("t0", "y"))
    assert pr.gt_tower_presentation(p0, "t0", 2).generators == ("t0", "y", "t1", "t2")
    with pytest.raises(pr.PresentationError):
        pr.gt_tower_presentation(p0, "q", 1)


def test_gt_tower_epis():
    for j in (1, 2, 3):
        rep = pr.check_tower_epi(BS_PRESENTATION, "t", j)
        assert rep["ok"]
    r1 = pr.gt_tower_epi(BS_PRESENTATION, "t", 1)
    r2 = pr.gt_tower_epi(BS_PRESENTATION, "t", 2)
    comp = pr.compose_maps(r1, r2)
    assert comp == {"t": parse_word("t"), "x": parse_word("x"), "t1": (), "t2": ()}
    # the composite followed by the BS model kills every relator of G_2
    g2 = pr.gt_tower_presentation(BS_PRESENTATION, "t", 2)
    images = {g: pr.evaluate(w, BS_GROUP, {"t": BS_T, "x": BS_X}) for g, w in comp.items()}
    assert pr.verify_hom(g2, BS_GROUP, images)["ok"]


def test_json_roundtrip():
    p = pr.gt_tower_presentation(BS_PRESENTATION, "t", 2)
    assert pr.presentation_from_json(pr.presentation_to_json(p)) == p
    w = parse_word("a b^-1")
    assert pr.word_from_json(pr.word_to_json(w)) == w
    assert pr.word_from_json("a b^-1") == w
    with pytest.raises(pr.PresentationError):
        pr.presentation_from_json({"relators": []})


def test_random_words_normal_form_speed():
    rng = random.Random(0)
    for _ in range(50):
        w = [(rng.choice("acz"), rng.choice((1, -1))) for _ in range(40)]
        assert heis_eval(normal_form(w, HEIS)) == heis_eval(w)
