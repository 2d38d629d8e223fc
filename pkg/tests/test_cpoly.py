from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lacc.coeff import GF, QQ, FieldMismatch
from lacc.cpoly import (DEGLEX, DEGREVLEX, EXPONENT_CAP, LEX, PARAMS, ExponentOverflow, LengthMismatch,
                        MissingAssignment, MonomialOrder, OrderKind, ParamPoly, PolySyntaxError,
                        order_compare, parse_order, ppoly_arith, ppoly_substitute)

from oracles import dict_eval, dict_mul, to_dict

P = ParamPoly.parse
AB = ("a", "b")


def test_difference_of_squares():
    a, b = P("l1 + m1"), P("l1 - m1")
    assert ppoly_arith(a, b, "mul") == P("l1^2 - m1^2")


def test_add_zero():
    p = P("m5*m5 + m6*m1 - 1")
    assert ppoly_arith(p, ParamPoly.zero(), "add") == p


def test_scale_negates():
    assert ppoly_arith(P("m5*m5"), -1, "scale") == P("-m5^2")


def test_mixed_fields():
    with pytest.raises(FieldMismatch):
        ppoly_arith(P("l1"), P("l1", GF(7)), "add")


def test_lex_ignores_degree():
    assert order_compare(LEX, (1, 0), (0, 5)) == 1


def test_deglex_degree_first():
    assert order_compare(DEGLEX, (1, 0), (0, 5)) == -1


def test_degrevlex_tie_break():
    assert order_compare(DEGREVLEX, (2, 1), (1, 2)) == 1


def test_order_length_mismatch():
    with pytest.raises(LengthMismatch):
        order_compare(DEGREVLEX, (1, 0), (1, 0, 0))


def test_degrevlex_differs_from_deglex():
    # x*z^2 vs y^3 in x>y>z: deglex prefers the x, degrevlex punishes the z^2
    assert order_compare(DEGLEX, (1, 0, 2), (0, 3, 0)) == 1
    assert order_compare(DEGREVLEX, (1, 0, 2), (0, 3, 0)) == -1


def test_substitute_f1_at_origin():
    f1 = P("m5*m5 + m6*m1 + m7*l5 + m8*l1 - 1")
    zero = {v: 0 for v in PARAMS}
    assert ppoly_substitute(f1, zero).value == -1


def test_substitute_constant_and_var():
    assert ppoly_substitute(ParamPoly.one(), {}).value == 1
    point = {v: 0 for v in PARAMS} | {"l1": 3}
    assert ppoly_substitute(P("l1"), point).value == 3


def test_substitute_missing():
    with pytest.raises(MissingAssignment):
        ppoly_substitute(P("l1 + m2"), {"l1": 1})


def test_parse_script_names_and_render():
    p = P("y(5)*y(5) + y(6)*y(1) + y(7)*x(5) + y(8)*x(1) - 1")
    assert p == P("m5*m5 + m6*m1 + m7*l5 + m8*l1 - 1")
    assert p.render(style="script").startswith("y(5)^2")
    assert P("- l1 + 2/3*m1^2").render() == "2/3*m1^2 - l1"


def test_parse_errors():
    with pytest.raises(PolySyntaxError):
        P("l1 + + ")
    with pytest.raises(PolySyntaxError):
        P("q9 + l1")


def test_exponent_cap():
    p = ParamPoly.var("l1") ** EXPONENT_CAP
    with pytest.raises(ExponentOverflow):
        p * ParamPoly.var("l1")


def test_leading_terms():
    p = ParamPoly.parse("a*b^2 + a^2*b + b", QQ, AB)
    assert p.leading_monomial(DEGREVLEX) == (2, 1)
    assert p.leading_monomial(parse_order("dp", (1, 0))) == (1, 2)
    assert p.leading_monomial(LEX) == (2, 1)


def test_parse_order_names():
    assert parse_order("dp").kind is OrderKind.DEGREVLEX
    assert parse_order("Dp").kind is OrderKind.DEGLEX
    assert parse_order("lp").kind is OrderKind.LEX
    with pytest.raises(ValueError):
        parse_order("ds")


# ---------------------------------------------------------------------------
# properties

N = 3
NAMES = ("a", "b", "c")
exps = st.tuples(*[st.integers(0, 3)] * N)
coefs = st.builds(Fraction, st.integers(-50, 50).filter(bool), st.integers(1, 6))
term_dicts = st.dictionaries(exps, coefs, max_size=5)
orders = st.builds(MonomialOrder, st.sampled_from(list(OrderKind)), st.permutations(range(N)).map(tuple))


def poly(d, field=QQ):
    return ParamPoly(d, field, NAMES)


@given(term_dicts, term_dicts, term_dicts)
@settings(max_examples=300)
def test_ring_axioms(a, b, c):
    x, y, z = poly(a), poly(b), poly(c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ParamPoly.zero(QQ, NAMES)


@given(term_dicts, term_dicts)
@settings(max_examples=300)
def test_product_matches_oracle(a, b):
    assert to_dict(poly(a) * poly(b)) == dict_mul(a, b)


@given(term_dicts, term_dicts, st.lists(st.builds(Fraction, st.integers(-20, 20), st.integers(1, 5)),
                                         min_size=N, max_size=N))
@settings(max_examples=300)
def test_substitute_is_homomorphism(a, b, pt):
    point = dict(zip(NAMES, pt))
    x, y = poly(a), poly(b)
    ev = lambda p: ppoly_substitute(p, point).value  # noqa: E731
    assert ev(x * y) == ev(x) * ev(y)
    assert ev(x + y) == ev(x) + ev(y)
    assert ev(x) == dict_eval(a, pt)


@given(term_dicts, st.sampled_from([2, 7, 32003]), st.lists(st.integers(0, 10**6), min_size=N, max_size=N))
@settings(max_examples=200)
def test_substitute_mod_p(a, p, pt):
    f = GF(p)
    x = poly(a).change_field(f) if all(Fraction(c).denominator % p for c in a.values()) else None
    if x is None:
        return
    point = dict(zip(NAMES, pt))
    assert ppoly_substitute(x, point).value == f(dict_eval(a, pt))


@given(orders, exps, exps, exps)
@settings(max_examples=500)
def test_order_axioms(o, m1, m2, w):
    c = order_compare(o, m1, m2)
    assert c == -order_compare(o, m2, m1)
    assert (c == 0) == (m1 == m2)
    assert order_compare(o, (0,) * N, m1) <= 0
    if c < 0:
        mw1 = tuple(x + y for x, y in zip(m1, w))
        mw2 = tuple(x + y for x, y in zip(m2, w))
        assert order_compare(o, mw1, mw2) < 0


@given(orders, exps, exps, exps)
@settings(max_examples=300)
def test_order_transitive(o, a, b, c):
    if order_compare(o, a, b) <= 0 and order_compare(o, b, c) <= 0:
        assert order_compare(o, a, c) <= 0


@given(term_dicts, orders)
@settings(max_examples=300)
def test_render_parse_roundtrip(a, o):
    p = poly(a)
    assert ParamPoly.parse(p.render(o), QQ, NAMES) == p
