import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lacc.coeff import QQ
from lacc.cpoly import ParamPoly
from lacc.magma import (NAPoly, WordSyntaxError, anticomm_normal_form, anticommutative_reduce, degree,
                        homogeneous_components, leaves, letter_class, render, serialize, type_key,
                        type_of, word_parse)

W = word_parse


def test_parse_left_nested():
    assert W("(bx)y") == (("b", "x"), "y")


def test_parse_right_nested():
    assert W("b(xy)") == ("b", ("x", "y"))


def test_parse_ambiguous():
    with pytest.raises(WordSyntaxError) as err:
        W("bxy")
    assert err.value.position == 2


@pytest.mark.parametrize("bad", ["", "(bx", "bx)", "(b)", "((bx)y", "b#"])
def test_parse_rejects(bad):
    with pytest.raises(WordSyntaxError):
        W(bad)


def test_parse_primes_and_outer_brackets():
    assert W("(bb')(xy)") == W("((bb')(xy))") == (("b", "b'"), ("x", "y"))
    assert W("b′x") == ("b'", "x")


def test_render_keeps_outer_product_bare():
    assert render(W("((bb')(xy))")) == "(bb')(xy)"
    assert render(W("x")) == "x"


def test_types():
    assert type_of(W("(bx)y")) == {"b": 1, "x": 1, "y": 1}
    assert type_of(W("(bb')(xy)")) == {"b": 1, "b'": 1, "x": 1, "y": 1}
    assert type_of(W("x")) == {"x": 1}


def test_letter_classes():
    assert letter_class("b'") == "beta" and letter_class("y") == "chi"
    with pytest.raises(ValueError):
        letter_class("q")


def test_components_split_by_type():
    p = NAPoly({"xy": 1, "x(xy)": 1})
    comps = homogeneous_components(p)
    assert sorted(comps) == sorted([type_key(W("xy")), type_key(W("x(xy)"))])


def test_components_of_zero():
    assert homogeneous_components(NAPoly()) == {}


def test_like_terms_merge():
    p = NAPoly([("xy", 2), ("xy", -1)])
    comps = homogeneous_components(p)
    assert len(comps) == 1
    (only,) = comps.values()
    assert only.coefficient("xy") == ParamPoly.one()


def test_nf_single_swap():
    assert anticomm_normal_form(W("yx")) == (-1, W("xy"))


def test_nf_two_swaps():
    assert anticomm_normal_form(W("(zy)x"), ("x", "y", "z")) == (1, W("x(yz)"))


def test_nf_square_untouched():
    assert anticomm_normal_form(W("xx")) == (1, W("xx"))


def test_reduce_jacobi_point():
    lam = [0, 0, -1, 0, 0, 0, 0, -1]
    assert anticommutative_reduce(lam) == (-1, -1)


def test_reduce_zero_and_unit():
    assert anticommutative_reduce([0] * 8) == (0, 0)
    assert anticommutative_reduce([1] + [0] * 7) == (-1, 0)


def test_reduce_matches_closed_form():
    l1, l2, l3, l4, l5, l6, l7, l8 = lam = [ParamPoly.var(f"l{i}") for i in range(1, 9)]
    a, b = anticommutative_reduce(lam)
    assert a == -l1 + l2 + l3 - l4
    assert b == l5 - l6 - l7 + l8


# ---------------------------------------------------------------------------
# properties

LETTERS = ["b", "b'", "x", "y"]
words = st.recursive(st.sampled_from(LETTERS), lambda kids: st.tuples(kids, kids), max_leaves=7)


@st.composite
def napolys(draw):
    items = draw(st.lists(st.tuples(words, st.integers(-3, 3)), max_size=8))
    return NAPoly(items)


@given(napolys())
@settings(max_examples=1000)
def test_components_reconstruct(p):
    comps = homogeneous_components(p)
    total = NAPoly()
    for key, c in comps.items():
        assert c
        assert {type_key(w) for w, _ in c.items()} == {key}
        total = total + c
    assert total == p
    assert len(set(comps)) == len(comps)


@st.composite
def reshuffled(draw):
    w = draw(words)
    ls = draw(st.permutations(leaves(w)))
    # rebuild a random tree over the permuted leaves
    def build(items):
        if len(items) == 1:
            return items[0]
        k = draw(st.integers(1, len(items) - 1))
        return (build(items[:k]), build(items[k:]))
    return w, build(list(ls))


@given(reshuffled())
@settings(max_examples=500)
def test_type_invariant_under_rebracketing(pair):
    w, v = pair
    assert type_of(w) == type_of(v)
    assert degree(w) == degree(v) == sum(type_of(w).values())


@given(words)
@settings(max_examples=500)
def test_nf_idempotent(w):
    s, n = anticomm_normal_form(w)
    assert anticomm_normal_form(n) == (1, n)
    assert type_of(n) == type_of(w)


@given(words, words)
@settings(max_examples=500)
def test_nf_antisymmetric(u, v):
    su, nu = anticomm_normal_form(u)
    sv, nv = anticomm_normal_form(v)
    if nu != nv:
        s1, w1 = anticomm_normal_form((u, v))
        s2, w2 = anticomm_normal_form((v, u))
        assert w1 == w2 and s1 == -s2


@given(words)
@settings(max_examples=500)
def test_parse_render_roundtrip(w):
    assert W(render(w)) == w


@given(words, words)
def test_serialization_is_injective(u, v):
    assert (serialize(u) == serialize(v)) == (u == v)
