import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringalg import catalog
from stringalg.algebra import Letter, StringAlgebra
from stringalg.words import (HalfWord, NotComposable, TwoSidedWord, Word, WordError, canonical_rep, compare,
                             compose, enumerate_words, equivalent, index_view, inverse, is_word, parse_any,
                             props, shift, words_in)

XY = catalog.xy_algebra()


def W(text, alg=XY):
    return Word.parse(alg, text)


def L(*names):
    return [Letter.parse(n) for n in names]


def path_algebra_a4():
    arrows = [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")]
    return StringAlgebra.build(["1", "2", "3", "4"], arrows, [("a", "b", "c")])


# is_word

def test_is_word_examples():
    assert is_word(XY, L("y^-1", "x", "x"))
    assert not is_word(XY, L("x", "y"))
    assert not is_word(XY, L("x", "x^-1"))
    assert not is_word(XY, L("y^-1", "x^-1"))


def test_unknown_arrow():
    with pytest.raises((WordError, KeyError)):
        W("z")


def test_periodic_shapes_checked_across_the_seam():
    with pytest.raises(WordError):
        W("periodic: x y")
    with pytest.raises(WordError):
        W("periodic: x x")  # a proper power is not primitive
    W("periodic: x y^-1")


# inverse, shift, compose

def test_inverse_examples():
    assert str(inverse(W("1_v_+"))) == "1_v_-"
    assert str(inverse(W("y^-1 x"))) == "x^-1 y"
    assert str(inverse(W("periodic: x y^-1"))) == "periodic: y x^-1"


def test_shift():
    assert shift(W("y^-1 x"), 3) == W("y^-1 x")
    assert str(shift(W("periodic: x y^-1"), 1)) == "periodic: y^-1 x"
    assert shift(W("periodic: x y^-1"), 2) == W("periodic: x y^-1")


def test_compose_trivial_idempotent():
    assert compose(W("1_v_+"), W("1_v_+")) == W("1_v_+")


def test_compose_concatenates():
    assert str(compose(W("y^-1"), W("x x"))) == "y^-1 x x"
    assert str(compose(W("x"), W("1_v_-"))) == "x"


@pytest.mark.parametrize("alg, c, d, reason", [
    (catalog.gentle_three(), "a", "c", "tail-head"),
    (XY, "x", "y", "sign"),
    (path_algebra_a4(), "a b", "c", "not-a-word"),
])
def test_compose_failure_reasons(alg, c, d, reason):
    with pytest.raises(NotComposable) as info:
        compose(W(c, alg), W(d, alg))
    assert info.value.reason == reason


# order

def test_compare_examples():
    assert compare(W("y"), W("1_v_+")) == -1
    assert compare(W("1_v_+"), W("x^-1")) == -1
    assert compare(W("x^-1"), W("1_v_+")) == 1
    assert compare(W("y y"), W("y y")) == 0


def test_compare_needs_same_class():
    with pytest.raises(WordError):
        compare(W("1_v_-"), W("x^-1"))


def test_finite_words_below_inverse_cycle():
    inv_x = W("eventually: | x^-1")
    for w in words_in(XY, "v", inv_x.sign, 5):
        if not w.is_inverse or w.kind == "trivial":
            if w.is_finite:
                assert compare(w, inv_x) == -1


def test_eventual_comparison_decides_equal_words():
    a = W("eventually: y | x^-1")
    b = W("eventually: y x^-1 | x^-1")
    assert compare(a, b) == 0
    assert a == b or compare(b, a) == 0


# equivalence

def test_equivalence_examples():
    assert equivalent(W("periodic: x y^-1"), W("periodic: y^-1 x"))
    assert equivalent(W("y^-1 x"), W("x^-1 y"))
    assert not equivalent(W("x"), W("y"))
    assert canonical_rep(W("x^-1")) == W("x")
    assert canonical_rep(W("periodic: y^-1 x")) == W("periodic: x y^-1")


def test_no_word_equals_shift_of_its_inverse():
    budget = {"v": 4}
    for w in enumerate_words(XY, budget):
        inv = inverse(w)
        if w.kind == "periodic":
            assert all(shift(inv, n) != w for n in range(len(w.period)))
        elif w.kind == "finite":
            assert inv != w


# enumeration

def test_enumerate_budget_two():
    found = [str(w) for w in enumerate_words(XY, {"v": 2})]
    assert found == ["1_v_+", "x", "y", "periodic: x", "periodic: y", "periodic: x y^-1"]


def test_enumerate_budget_one():
    found = [str(w) for w in enumerate_words(XY, {"v": 1})]
    assert [w for w in found if not w.startswith("periodic")] == ["1_v_+"]
    # one-dimensional bands on a loop fit a budget of one
    assert found == ["1_v_+", "periodic: x", "periodic: y"]


def test_enumerate_a2():
    found = [str(w) for w in enumerate_words(catalog.a2(), {"1": 1, "2": 1})]
    assert found == ["1_1_+", "1_2_+", "a"]


def test_enumerate_square_zero():
    found = [str(w) for w in enumerate_words(catalog.square_zero_algebra(), {"v": 2})]
    assert found == ["1_v_+", "x", "y", "periodic: x y", "periodic: x y^-1"]


def test_enumeration_is_canonical_and_respects_budget():
    for alg, budget in [(XY, {"v": 4}), (catalog.gentle_three(), {"1": 2, "2": 2, "3": 2})]:
        seen = list(enumerate_words(alg, budget))
        for w in seen:
            assert canonical_rep(w) == w
            counts = w.index_counts()
            assert all(counts.get(v, 0) <= budget[v] for v in counts)
        for u, v in itertools.combinations(seen, 2):
            assert not equivalent(u, v)


# index views

def test_index_view_signs():
    c = W("y^-1 x")
    plus, d1 = index_view(c, 1, 1)
    minus, d2 = index_view(c, 1, -1)
    assert {str(plus), str(minus)} == {"x", "y"}
    assert plus.sign == 1 and minus.sign == -1
    assert plus.head == minus.head == "v"
    assert {d1, d2} == {1, -1}


# predicates

def test_props_eventual_string():
    c = W("eventually: y^-1 x x | y^-1")
    res = props(c)
    assert res["finitely_generated"]
    assert res["finitely_controlled"]
    assert res["eventually_inverse"] == {"C": True, "C_inverse": True}


def test_props_gamma_word():
    d = parse_any(None, "twosided: | x_0 y_0^-1 y_1^-1 @ 1 || | x_1^-1 @ 1")
    res = props(d)
    assert res["finitely_controlled"]
    assert not res["finitely_generated"]
    assert res["eventually_inverse"] == {"C": True, "C_inverse": False}
    assert res["vertex_finite"]["C_inverse"]


def test_gamma_word_unrolls():
    d = TwoSidedWord.parse("twosided: | x_0 y_0^-1 y_1^-1 @ 1 || | x_1^-1 @ 1")
    assert [str(x) for x in d.right.letters(3)] == ["x_1^-1", "x_2^-1", "x_3^-1"]
    assert [str(x) for x in d.left.letters(6)] == ["x_0", "y_0^-1", "y_1^-1", "x_1", "y_1^-1", "y_2^-1"]


@pytest.mark.parametrize("text", ["1_v_+", "x", "y^-1 x x y^-1"])
def test_props_finite_words(text):
    res = props(W(text))
    assert res["finitely_generated"] and res["finitely_controlled"]


def test_props_direct_tail_not_finitely_controlled():
    res = props(W("eventually: | x"))
    assert not res["finitely_controlled"]
    res = props(HalfWord.parse("| x_1 @ 1"))
    assert res["finitely_controlled"] and not res["finitely_generated"]


# properties

def finite_words(alg, max_len=6):
    pool = words_in(alg, alg.vertices[0], 1, max_len) + words_in(alg, alg.vertices[0], -1, max_len)
    return st.sampled_from(pool)


@settings(max_examples=80, deadline=None)
@given(finite_words(XY))
def test_inverse_is_involution(c):
    assert inverse(inverse(c)) == c


@settings(max_examples=80, deadline=None)
@given(finite_words(XY, 4), finite_words(XY, 4))
def test_inverse_reverses_composition(c, d):
    try:
        cd = compose(c, d)
    except NotComposable:
        return
    assert inverse(cd) == compose(inverse(d), inverse(c))


@settings(max_examples=80, deadline=None)
@given(finite_words(XY))
def test_signs_alternate_in_words(c):
    for a, b in zip(c.letters, c.letters[1:]):
        assert XY.sign(a.inv()) != XY.sign(b)


@pytest.mark.parametrize("eps", [1, -1])
def test_compare_is_strict_total_order(eps):
    ws = words_in(XY, "v", eps, 5)
    ws += [W(t) for t in ["eventually: | x^-1", "eventually: | y", "eventually: y | x^-1",
                         "eventually: x^-1 | y", "eventually: | y x^-1", "eventually: | x^-1 y"]
           if W(t).sign == eps]
    for a in ws:
        assert compare(a, a) == 0
    for a, b in itertools.combinations(ws, 2):
        ab, ba = compare(a, b), compare(b, a)
        assert ab == -ba
        assert (ab == 0) == (a == b)
    ordered = sorted(ws, key=__import__("functools").cmp_to_key(compare))
    for a, b, c in zip(ordered, ordered[1:], ordered[2:]):
        assert compare(a, c) == -1 or a == c


EVENTUAL = ["eventually: | x^-1", "eventually: | y", "eventually: y | x^-1", "eventually: x^-1 | y",
            "eventually: | y x^-1", "eventually: | x^-1 y", "eventually: y x^-1 | y x^-1",
            "eventually: y x^-1 y | x^-1 y", "eventually: | y x^-1 y x^-1 x^-1", "eventually: y | x^-1 x^-1 y",
            "eventually: y x^-1 | x^-1 y x^-1", "eventually: | x^-1 x^-1 y",
            "eventually: | x", "eventually: | y^-1", "eventually: | x y^-1", "eventually: | y^-1 x",
            "eventually: x | y^-1 x", "eventually: y^-1 | x", "eventually: | x x y^-1", "eventually: x y^-1 | x",
            "eventually: x y^-1 | x y^-1", "eventually: y^-1 x x | y^-1"]


def brute_compare(c, d, depth=120):
    for k in range(depth):
        a, b = c.letter_at(k), d.letter_at(k)
        if a != b:
            return -1 if a.direct else 1
    return 0


@pytest.mark.parametrize("eps", [1, -1])
def test_eventual_compare_matches_long_unrolling(eps):
    ws = [w for w in map(W, EVENTUAL) if w.sign == eps]
    assert len(ws) > 2
    for a, b in itertools.product(ws, repeat=2):
        assert compare(a, b) == brute_compare(a, b)
