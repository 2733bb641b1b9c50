import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from murank.oracle import (
    COEFF_GRID,
    SHAPES,
    GridTooLarge,
    InstanceSpec,
    check_instance,
    differential_suite,
    grid_search_factor,
    normalized_grid_vectors,
    random_instance,
    random_mu,
)
from murank.factor import verify_factorization
from murank.skewring import LinearForm, MuParams, QuadraticForm, multiply_linear


def test_normalized_vector_count():
    # 7^3 + 7^2 + 7 + 1 vectors whose first nonzero entry is 1
    assert len(COEFF_GRID) == 7
    assert len(normalized_grid_vectors(COEFF_GRID, 4)) == 400


@settings(max_examples=40, deadline=None)
@given(
    a=st.lists(st.sampled_from(COEFF_GRID), min_size=3, max_size=3),
    b=st.lists(st.sampled_from(COEFF_GRID), min_size=3, max_size=3),
    seed=st.integers(0, 1000),
    c=st.sampled_from([Fraction(1), Fraction(-2), Fraction(1, 3)]),
)
def test_grid_search_recovers_grid_products(a, b, seed, c):
    spec = InstanceSpec(n=4)
    mu = random_mu(spec, random.Random(seed))
    q = multiply_linear(LinearForm([Fraction(1), *a]), LinearForm([Fraction(1), *b]), mu).scale(c)
    f = grid_search_factor(q, mu)
    assert f is not None and f.verified
    assert verify_factorization(q, f, mu)


def test_grid_search_rejects_full_rank():
    mu = MuParams.ones(4)
    q = QuadraticForm(4, {(i, i): Fraction(1) for i in range(4)})
    assert grid_search_factor(q, mu) is None


def test_grid_search_limits():
    mu = MuParams.ones(4)
    q = QuadraticForm(4, {(0, 0): Fraction(1)})
    with pytest.raises(GridTooLarge):
        grid_search_factor(q, mu, grid=range(-10, 11))
    with pytest.raises(TypeError):
        grid_search_factor(q.to_complex(), mu.to_complex())


def test_instances_are_deterministic():
    spec = InstanceSpec(n=4, seed=11)
    for shape in SHAPES:
        a = random_instance(spec, shape, random.Random(3))
        b = random_instance(spec, shape, random.Random(3))
        assert a.payload() == b.payload()


@pytest.mark.parametrize("shape", ["square", "p14", "p15", "p16"])
def test_generated_instances_match_hidden_factors(shape):
    spec = InstanceSpec(n=4, seed=2)
    inst = random_instance(spec, shape, random.Random(9))
    if shape == "square":
        (L,) = inst.factors
        assert multiply_linear(L, L, inst.mu) == inst.q
    else:
        l1, l2, pre = inst.factors
        assert multiply_linear(l1, l2, inst.mu).scale(pre) == inst.q


def test_check_instance_reports_no_failures_on_products():
    spec = InstanceSpec(n=3, seed=4)
    for shape in ("square", "p14", "p15", "p16"):
        res = check_instance(random_instance(spec, shape, random.Random(1)))
        assert res["failures"] == [] and res["inconsistencies"] == []


@pytest.mark.parametrize("backend", ["exact", "complex"])
@pytest.mark.parametrize("n", [3, 4])
def test_small_suite_is_clean_on_generated_products(backend, n):
    spec = InstanceSpec(n=n, backend=backend, seed=7)
    report = differential_suite(40, spec, shapes=("square", "p14", "p15", "p16"))
    assert report.ok, report.to_json()
