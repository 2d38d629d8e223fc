from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lacc.coeff import (GF, QQ, DivisionByZero, FieldKind, FieldMismatch, ModulusTooLarge,
                        NonPrimeModulus, Scalar, field_make, is_prime, parse_field, scalar_arith)

PRIMES = [2, 3, 7, 1049, 32003, 2147483647]


def test_field_make_rationals():
    assert field_make(FieldKind.RATIONALS) == QQ
    assert QQ.characteristic == 0


def test_field_make_gf7():
    f = field_make(FieldKind.PRIME, 7)
    assert f.modulus == 7 and str(f) == "GF(7)"


def test_field_make_rejects_composite():
    with pytest.raises(NonPrimeModulus):
        field_make(FieldKind.PRIME, 6)


def test_field_make_rejects_wide_modulus():
    with pytest.raises(ModulusTooLarge):
        field_make("GF", 2**31 + 11)


def test_gf7_product():
    f = GF(7)
    assert scalar_arith(Scalar.of(f, 3), Scalar.of(f, 5), "mul") == Scalar(f, 1)


def test_rational_sum():
    r = scalar_arith(Scalar.of(QQ, "1/2"), Scalar.of(QQ, "1/3"), "add")
    assert r.value == Fraction(5, 6)
    assert str(r) == "5/6"


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        scalar_arith(Scalar.of(QQ, 0), None, "inv")
    with pytest.raises(ZeroDivisionError):
        Scalar.of(GF(5), 0).inv()


def test_mixed_fields_refused():
    with pytest.raises(FieldMismatch):
        scalar_arith(Scalar.of(GF(5), 1), Scalar.of(GF(7), 1), "add")


def test_render():
    assert QQ.render(Fraction(4, 2)) == "2"
    assert QQ.render(Fraction(-3, 6)) == "-1/2"
    assert GF(7).render(GF(7)(-1)) == "6"


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("gf:2") == GF(2)
    assert parse_field("GF(1049)") == GF(1049)
    with pytest.raises(NonPrimeModulus):
        parse_field("gf:9")


def test_fraction_reduced_mod_p():
    assert GF(7)(Fraction(1, 2)) == 4
    with pytest.raises(DivisionByZero):
        GF(7)(Fraction(1, 7))


@given(st.integers(min_value=0, max_value=200_000))
@settings(max_examples=1000)
def test_primality_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("n", [2147483647, 2147483629, 2147483643, 1_000_000_007, 3215031751 % (2**31)])
def test_primality_large(n):
    assert is_prime(n) == sympy.isprime(n)


rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)


def _field_and_values(draw_n=3):
    @st.composite
    def strat(draw):
        if draw(st.booleans()):
            f = QQ
            vals = [draw(rationals) for _ in range(draw_n)]
        else:
            f = GF(draw(st.sampled_from(PRIMES)))
            vals = [draw(st.integers(min_value=0, max_value=f.modulus - 1)) for _ in range(draw_n)]
        return f, [Scalar.of(f, v) for v in vals]
    return strat()


@given(_field_and_values())
@settings(max_examples=1000)
def test_field_axioms(fv):
    f, (a, b, c) = fv
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == Scalar.of(f, 0)
    if a:
        assert a * a.inv() == Scalar.of(f, 1)


@given(_field_and_values(2))
@settings(max_examples=500)
def test_canonical_forms(fv):
    f, (a, b) = fv
    for op in ("add", "sub", "mul"):
        v = scalar_arith(a, b, op).value
        if f is QQ:
            assert v.denominator > 0 and gcd(v.numerator, v.denominator) == 1
        else:
            assert 0 <= v < f.modulus


@given(st.sampled_from(PRIMES), st.integers())
def test_lift_roundtrip(p, n):
    f = GF(p)
    r = f(n)
    assert f(f.lift(r)) == r and 0 <= f.lift(r) < p
