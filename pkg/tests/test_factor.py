import pytest
from hypothesis import given, settings, strategies as st

from conftest import EXAMPLE_FORM, forms, linears, mus, nonzero_rationals
from murank.factor import (
    Factorization,
    factor,
    factor_product,
    factor_product_a11nonzero,
    factor_product_a11zero,
    factor_square,
    verify_factorization,
)
from murank.parser import parse_form
from murank.rankcore import Rank, murank
from murank.skewring import LinearForm, MuParams, QuadraticForm, multiply_linear


def test_example_factorization(example_mu):
    q = parse_form(EXAMPLE_FORM, 4, example_mu)
    f = factor_product(q, example_mu)
    assert f is not None and f.verified
    want = multiply_linear(LinearForm([1, 1, 1, 1]), LinearForm([1, 2, 2, 2]), example_mu)
    assert f.expand(example_mu) == want == q


def test_square_of_nonsquare_is_none():
    mu = MuParams.ones(3)
    assert factor_square(QuadraticForm(3, {(0, 0): 1, (1, 1): 1}), mu) is None


def test_square_with_irrational_root():
    mu = MuParams.ones(3)
    q = QuadraticForm(3, {(0, 0): 2})
    f = factor_square(q, mu)
    assert f is not None and verify_factorization(q, f, mu)


def test_wrong_branch_raises():
    mu = MuParams.ones(3)
    with pytest.raises(ValueError):
        factor_product_a11zero(QuadraticForm(3, {(0, 0): 1}), mu)
    with pytest.raises(ValueError):
        factor_product_a11nonzero(QuadraticForm(3, {(1, 1): 1}), mu)


def test_verify_rejects_wrong_factorization():
    mu = MuParams.ones(3)
    q = QuadraticForm(3, {(0, 1): 1})
    bad = Factorization("product", (LinearForm([1, 0, 0]), LinearForm([1, 0, 0])))
    assert not verify_factorization(q, bad, mu)
    malformed = Factorization("product", (LinearForm([1, 0, 0]),))
    assert not verify_factorization(q, malformed, mu)


@settings(max_examples=80, deadline=None)
@pytest.mark.parametrize("n", [3, 4])
@given(data=st.data())
def test_every_square_is_recovered(n, data):
    mu = data.draw(mus(n))
    L = data.draw(linears(n))
    q = multiply_linear(L, L, mu)
    f = factor_square(q, mu)
    assert f is not None and f.verified
    assert murank(q, mu).rank in (Rank.ZERO, Rank.ONE)


@settings(max_examples=80, deadline=None)
@pytest.mark.parametrize("n", [3, 4])
@given(data=st.data(), c=nonzero_rationals)
def test_every_product_is_recovered(n, data, c):
    mu = data.draw(mus(n))
    l1, l2 = data.draw(linears(n)), data.draw(linears(n))
    q = multiply_linear(l1, l2, mu).scale(c)
    f = factor_product(q, mu)
    assert f is not None and f.verified
    assert f.expand(mu) == q
    assert murank(q, mu).rank.at_most_two()


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_factor_found_implies_low_rank(data):
    mu = data.draw(mus(4))
    q = data.draw(forms(4))
    if factor(q, mu) is not None:
        assert murank(q, mu).rank.at_most_two()


def test_complex_backend_products():
    from murank.oracle import InstanceSpec, random_product

    spec = InstanceSpec(n=4, backend="complex", seed=5)
    for shape in ("p14", "p15", "p16"):
        inst = random_product(spec, shape)
        f = factor_product(inst.q, inst.mu)
        assert f is not None and verify_factorization(inst.q, f, inst.mu)


def test_json_shape():
    mu = MuParams.ones(3)
    f = factor_square(QuadraticForm(3, {(0, 0): 4}), mu)
    out = f.to_json()
    assert out["kind"] == "square"
    assert out["factors"] == [["2", "0", "0"]]
