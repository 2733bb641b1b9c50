from fractions import Fraction

import pytest
from hypothesis import strategies as st

from murank.skewring import LinearForm, MuParams, QuadraticForm, pairs

GRID = [Fraction(k, d) for k in range(-3, 4) for d in (1, 2)]
MU_VALUES = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3), Fraction(2, 3)]

rationals = st.sampled_from(sorted(set(GRID)))
nonzero_rationals = st.sampled_from(sorted({g for g in GRID if g != 0}))


@st.composite
def mus(draw, n):
    upper = {(i, j): draw(st.sampled_from(MU_VALUES)) for i in range(n) for j in range(i + 1, n)}
    return MuParams.from_upper(n, upper)


@st.composite
def linears(draw, n):
    return LinearForm([draw(rationals) for _ in range(n)])


@st.composite
def forms(draw, n):
    return QuadraticForm(n, {ij: draw(rationals) for ij in pairs(n)})


@pytest.fixture
def example_mu():
    return MuParams.from_upper(4, {(i, j): Fraction(2) for i in range(4) for j in range(i + 1, 4)})


EXAMPLE_FORM = "z1^2 + 2z2^2 + 2z3^2 + 2z4^2 + 4z1*z2 + 4z1*z3 + 4z1*z4 + 6z2*z3 + 6z2*z4 + 6z3*z4"
