import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from rncsplit.fields import DEFAULT_PRIME, FieldError, FieldSpec, RATIONALS, parse_field

GF101 = FieldSpec(101)


def test_prime_validation():
    FieldSpec(2)
    FieldSpec(32003)
    with pytest.raises(FieldError):
        FieldSpec(91)  # 7 * 13
    with pytest.raises(FieldError):
        FieldSpec(1)


def test_parse_field():
    assert parse_field("rational").p is None
    assert parse_field("prime:101").p == 101
    with pytest.raises(FieldError):
        parse_field("galois:4")


def test_rational_ops_are_fractions():
    K = RATIONALS
    x = K.div(K.from_int(1), K.from_int(3))
    assert x == Fraction(1, 3)
    assert K.mul(x, K.from_int(3)) == 1


def test_default_prime_is_prime():
    FieldSpec(DEFAULT_PRIME)


@given(st.integers(-500, 500), st.integers(-500, 500), st.integers(-500, 500))
def test_field_axioms_gf101(a, b, c):
    K = GF101
    a, b, c = K.from_int(a), K.from_int(b), K.from_int(c)
    assert K.add(a, K.add(b, c)) == K.add(K.add(a, b), c)
    assert K.mul(a, K.mul(b, c)) == K.mul(K.mul(a, b), c)
    assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
    assert K.add(a, b) == K.add(b, a)
    assert K.mul(a, b) == K.mul(b, a)
    if not K.is_zero(a):
        assert K.mul(a, K.inv(a)) == K.one


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_field_axioms_rationals(a, b):
    K = RATIONALS
    assert K.sub(K.add(a, b), b) == a
    if not K.is_zero(b):
        assert K.mul(K.div(a, b), b) == a


@pytest.mark.parametrize("field", [RATIONALS, GF101])
def test_scalar_text_round_trip(field):
    for n in (-7, 0, 1, 42):
        s = field.format_scalar(field.from_int(n))
        assert field.parse_scalar(s) == field.from_int(n)
    if field.p is None:
        assert field.parse_scalar("3/4") == Fraction(3, 4)


def test_balanced_representative_printing():
    K = FieldSpec(32003)
    assert K.format_scalar(K.from_int(-1)) == "-1"
    assert K.format_scalar(K.from_int(5)) == "5"
