from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import EXAMPLE_FORM, forms, linears, mus, nonzero_rationals
from murank.musym import matrix_from_form
from murank.parser import parse_form
from murank.rankcore import (
    Rank,
    dets3,
    dets4_a11nonzero,
    dets4_a11zero,
    exists_sign_vanishing,
    minors3,
    minors4,
    murank,
    murank3,
    murank4,
    relabel,
    sign_choices,
    sign_table,
)
from murank.skewring import DimensionError, LinearForm, MuParams, QuadraticForm, multiply_linear


def test_sign_choice_order():
    assert [str(s) for s in sign_choices(2)] == ["+++", "+-+", "-++", "--+"]
    assert len(sign_choices(3)) == 8


def test_example_values(example_mu):
    q = parse_form(EXAMPLE_FORM, 4, example_mu)
    r = murank4(q, example_mu)
    assert r.rank is Rank.TWO
    # 4*a12^2 - (1 + mu12)^2 a11 a22 = 16 - 9*2
    assert r.d_values[1] == -2
    assert all(r.d_values[k] == 0 for k in (25, 26, 27))


def test_zero_form_is_rank_zero():
    assert murank(QuadraticForm(3), MuParams.ones(3)).rank is Rank.ZERO
    assert murank(QuadraticForm(4), MuParams.ones(4)).rank is Rank.ZERO


def test_commutative_ranks():
    mu = MuParams.ones(3)
    assert murank3(QuadraticForm(3, {(0, 0): 1}), mu).rank is Rank.ONE
    assert murank3(QuadraticForm(3, {(0, 0): 1, (1, 1): 1}), mu).rank is Rank.TWO
    assert murank3(QuadraticForm(3, {(0, 0): 1, (1, 1): 1, (2, 2): 1}), mu).rank is Rank.THREE
    mu4 = MuParams.ones(4)
    full = QuadraticForm(4, {(i, i): 1 for i in range(4)})
    assert murank4(full, mu4).rank is Rank.AT_LEAST_THREE


def test_dimension_checks():
    with pytest.raises(DimensionError):
        murank3(QuadraticForm(4), MuParams.ones(4))
    with pytest.raises(DimensionError):
        murank(QuadraticForm(5), MuParams.ones(5))


@pytest.mark.parametrize("n", [3, 4])
@given(data=st.data())
def test_squares_have_vanishing_minors(n, data):
    mu = data.draw(mus(n))
    L = data.draw(linears(n))
    m = matrix_from_form(multiply_linear(L, L, mu), mu)
    assert all(d == 0 for d in (minors3(m) if n == 3 else minors4(m)))


@given(data=st.data())
def test_a11_zero_products_have_vanishing_brackets(data):
    mu = data.draw(mus(4))
    l1 = LinearForm([Fraction(1), *data.draw(linears(4)).coeffs[1:]])
    l2 = LinearForm([Fraction(0), *data.draw(linears(4)).coeffs[1:]])
    q = multiply_linear(l1, l2, mu)
    assert all(d == 0 for d in dets4_a11zero(matrix_from_form(q, mu)))
    q3 = multiply_linear(LinearForm(l1.coeffs[:3]), LinearForm(l2.coeffs[:3]), MuParams(tuple(r[:3] for r in mu.entries[:3])))
    assert dets3(matrix_from_form(q3, MuParams(tuple(r[:3] for r in mu.entries[:3]))))[0] == 0


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_a11_one_products_have_a_vanishing_sign(data):
    mu = data.draw(mus(4))
    l1 = LinearForm([Fraction(1), *data.draw(linears(4)).coeffs[1:]])
    l2 = LinearForm([Fraction(1), *data.draw(linears(4)).coeffs[1:]])
    m = matrix_from_form(multiply_linear(l1, l2, mu), mu)
    found, sign, vals = exists_sign_vanishing(m, "dets4")
    assert found and all(v == 0 for v in vals)


@settings(max_examples=60, deadline=None)
@pytest.mark.parametrize("which,n", [("dets3", 3), ("dets4", 4)])
@given(data=st.data())
def test_automorphism_table_matches_direct_evaluation(which, n, data):
    mu = data.draw(mus(n))
    q = data.draw(forms(n))
    if q[0, 0] == 0:
        q = q + QuadraticForm(n, {(0, 0): Fraction(1)})
    m = matrix_from_form(q, mu)
    fast = sign_table(m, which)
    slow = sign_table(m, which, brute=True)
    assert [s for s, _ in fast] == [s for s, _ in slow]
    for (_, a), (_, b) in zip(fast, slow):
        assert all(x - y == 0 for x, y in zip(a, b))


@settings(max_examples=40, deadline=None)
@given(data=st.data(), lam=nonzero_rationals)
def test_homogeneity_degrees(data, lam):
    mu = data.draw(mus(4))
    q = data.draw(forms(4))
    m, ml = matrix_from_form(q, mu), matrix_from_form(q.scale(lam), mu)
    assert all(b == lam**2 * a for a, b in zip(minors4(m), minors4(ml)))
    # each bracket is cubic in the entries, so the product has degree 6
    assert all(b == lam**6 * a for a, b in zip(dets4_a11zero(m), dets4_a11zero(ml)))
    from murank.rankcore import discriminants4
    from murank.scalar import principal_sqrt

    roots = [principal_sqrt(s) for s in discriminants4(m)]
    for sign in sign_choices(3):
        base = dets4_a11nonzero(m, sign, roots)
        scaled = dets4_a11nonzero(ml, sign, [lam * r for r in roots])
        assert all(b - lam**2 * a == 0 for a, b in zip(base, scaled))


@settings(max_examples=60, deadline=None)
@pytest.mark.parametrize("n", [3, 4])
@given(data=st.data(), lam=nonzero_rationals)
def test_rank_is_scale_invariant(n, data, lam):
    mu = data.draw(mus(n))
    q = data.draw(forms(n))
    assert murank(q.scale(lam), mu).rank is murank(q, mu).rank


@given(data=st.data(), perm=st.permutations(range(4)))
def test_relabel_transports_products(data, perm):
    mu = data.draw(mus(4))
    l1, l2 = data.draw(linears(4)), data.draw(linears(4))
    q2, mu2 = relabel(multiply_linear(l1, l2, mu), mu, perm)
    mu2.validate()

    def move(l):
        c = [None] * 4
        for i in range(4):
            c[perm[i]] = l.coeffs[i]
        return LinearForm(c)

    assert q2 == multiply_linear(move(l1), move(l2), mu2)


def test_a11_zero_gate_is_not_sufficient():
    # commutative form whose symmetric matrix has full rank 4, so it is not a
    # product, yet every bracket determinant and the n=4 gate vanish
    mu = MuParams.ones(4)
    q = QuadraticForm(4, {(0, 2): 2, (0, 3): 2, (1, 2): 2})
    r = murank4(q, mu)
    assert r.d_values[2] == 4
    assert (r.d_values[22], r.d_values[23], r.d_values[24]) == (0, 0, 0)
    assert r.rank is Rank.TWO
    import sympy as sp

    M = sp.Matrix([[0, 0, 1, 1], [0, 0, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]])
    assert M.rank() == 4
