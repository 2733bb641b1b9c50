import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from murank.scalar import (
    IMAG,
    ComplexF,
    QuadExt,
    from_json,
    inv,
    is_zero,
    parse_rational,
    principal_sqrt,
    rational_sqrt,
    sign_flip,
    sqrt_candidates,
    to_json,
)

small = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_rational_sqrt_perfect_square():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)


def test_sqrt_of_two_is_adjoined_symbol():
    r = rational_sqrt(Fraction(2))
    assert isinstance(r, QuadExt)
    assert r * r == 2
    assert r.squares == (2,)


def test_sqrt_of_negative_uses_imaginary_unit():
    r = rational_sqrt(Fraction(-3))
    assert r * r == -3
    assert IMAG in r.squares


def test_sqrt_of_eight_shares_the_symbol_of_two():
    a, b = rational_sqrt(Fraction(8)), rational_sqrt(Fraction(2))
    assert a - 2 * b == 0


def test_sqrt_candidates_zero_has_single_root():
    assert sqrt_candidates(Fraction(0)) == [0]
    assert len(sqrt_candidates(Fraction(5))) == 2


@given(small)
def test_principal_sqrt_squares_back(x):
    r = principal_sqrt(x)
    assert r * r == x


@given(small, small, small)
def test_quadext_inverse(a, b, c):
    x = a + b * rational_sqrt(Fraction(2)) + c * rational_sqrt(Fraction(-3))
    if x == 0:
        with pytest.raises(ZeroDivisionError):
            inv(x)
    else:
        assert x * inv(x) == 1


@given(small, small)
def test_quadext_matches_complex_evaluation(a, b):
    s2, s3 = rational_sqrt(Fraction(2)), rational_sqrt(Fraction(3))
    x = (a + b * s2) * (b - a * s3) * s2
    want = (float(a) + float(b) * 2**0.5) * (float(b) - float(a) * 3**0.5) * 2**0.5
    assert abs(x.to_complex() - want) < 1e-9 * (1 + abs(want))


def test_sign_flip_is_a_ring_automorphism():
    s2, s3 = rational_sqrt(Fraction(2)), rational_sqrt(Fraction(3))
    x, y = 1 + s2 + s3, Fraction(1, 2) - s2 * s3
    assert sign_flip(x * y, 2) == sign_flip(x, 2) * sign_flip(y, 2)
    assert sign_flip(Fraction(3), 2) == 3


def test_complexf_zero_test_is_relative():
    big = ComplexF(1e12)
    assert not is_zero(big)
    assert is_zero(big - ComplexF(1e12 + 1e-4))
    assert not is_zero(ComplexF(1e-6))


def test_complexf_sqrt_of_small_snaps_to_zero():
    x = ComplexF(1.0) * ComplexF(1.0) - ComplexF(1.0)
    assert sqrt_candidates(x) == [0] or all(is_zero(r) for r in sqrt_candidates(x))


def test_complexf_sqrt():
    r = principal_sqrt(ComplexF(-4 + 0j))
    assert abs(complex(r) - cmath.sqrt(-4)) < 1e-12


@pytest.mark.parametrize(
    "value",
    [Fraction(3, 7), Fraction(-2), ComplexF(1 + 2j)],
)
def test_json_round_trip(value):
    back = from_json(to_json(value))
    assert is_zero(back - value)


def test_json_round_trip_quadext():
    x = Fraction(1, 2) + 3 * rational_sqrt(Fraction(2)) - rational_sqrt(Fraction(-6))
    assert from_json(to_json(x)) == x


def test_parse_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    with pytest.raises(ValueError):
        parse_rational("abc")
