from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import forms, mus
from murank.parser import ParseError, form_from_json, form_to_json, mu_to_json, parse_form, parse_mu, parse_terms
from murank.skewring import MuError, MuParams, render_form


def test_example_mu_string():
    mu = parse_mu("mu12=2,mu13=2,mu14=2,mu23=2,mu24=2,mu34=2", 4)
    assert mu[0, 1] == 2 and mu[1, 0] == Fraction(1, 2)


def test_missing_mu_defaults_to_one():
    mu = parse_mu("mu12=3", 3)
    assert mu[0, 2] == 1 and mu[1, 2] == 1
    assert parse_mu(None, 3) == MuParams.ones(3)
    assert parse_mu("", 3) == MuParams.ones(3)


def test_reverse_mu_key_takes_reciprocal():
    assert parse_mu("mu21=4", 3)[0, 1] == Fraction(1, 4)


def test_bad_mu():
    with pytest.raises(MuError):
        parse_mu("mu12=0", 3)
    with pytest.raises(MuError):
        parse_mu("mu12=2,mu21=2", 3)
    with pytest.raises(ParseError):
        parse_mu("m12=2", 3)
    with pytest.raises(MuError):
        parse_mu('[["1","2","1"],["2","1","1"],["1","1","1"]]', 3)


def test_mu_json_round_trip():
    mu = parse_mu("mu12=2,mu13=-1/3", 3)
    assert parse_mu(mu_to_json(mu), 3) == mu


def test_out_of_order_word_is_rewritten():
    mu = parse_mu("mu12=3", 3)
    q = parse_form("z2*z1", 3, mu)
    assert q[0, 1] == 3


def test_coefficients_and_signs():
    q = parse_form("-z1^2 + 1/2 z1*z2 - 3*z3^2 + z1*z2", 3, MuParams.ones(3))
    assert (q[0, 0], q[0, 1], q[2, 2]) == (-1, Fraction(3, 2), -3)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("z1", "degree 1"),
        ("3", "degree 0"),
        ("z1^3", "exponent"),
        ("z5^2", "out of range"),
        ("z1^2 +", "expected"),
        ("z1^2 $ z2^2", "unexpected character"),
        ("", "empty"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_form(text, 4, MuParams.ones(4))


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_terms("z1^2 + z9^2", 4)
    assert info.value.pos == 8


@pytest.mark.parametrize("n", [3, 4])
@given(data=st.data())
def test_render_then_parse_round_trip(n, data):
    mu = data.draw(mus(n))
    q = data.draw(forms(n))
    text = render_form(q)
    if text == "0":
        return
    assert parse_form(text, n, mu) == q


@given(forms(4))
def test_form_json_round_trip(q):
    assert form_from_json(form_to_json(q), 4) == q


def test_form_json_rejects_lower_keys():
    with pytest.raises(ParseError):
        form_from_json({"21": "1"}, 3)
