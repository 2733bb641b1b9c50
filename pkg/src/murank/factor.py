"""Constructive factorizations Q = L^2 and Q = c * L1 L2.

Every construction is re-expanded with :func:`multiply_linear` before it is
returned, so a non-None result always satisfies its own equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .rankcore import SignChoice, sign_choices
from .scalar import inv, is_zero, sqrt_candidates, to_json
from .skewring import DimensionError, LinearForm, MuParams, QuadraticForm, multiply_linear


class InternalInconsistency(RuntimeError):
    """The closed-form classifier and the constructive factorizer disagree."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


@dataclass(frozen=True)
class Factorization:
    kind: str  # "square" or "product"
    factors: tuple[LinearForm, ...]
    prefactor: object = Fraction(1)
    provenance: str = ""
    signs: SignChoice | None = None
    verified: bool = False

    def expand(self, mu: MuParams) -> QuadraticForm:
        left = self.factors[0]
        right = self.factors[0] if self.kind == "square" else self.factors[1]
        return multiply_linear(left, right, mu).scale(self.prefactor)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "prefactor": to_json(self.prefactor),
            "factors": [[to_json(c) for c in f.coeffs] for f in self.factors],
            "provenance": self.provenance,
            "signs": list(self.signs) if self.signs else None,
        }

    def __str__(self):
        body = (
            f"({self.factors[0]})^2"
            if self.kind == "square"
            else f"({self.factors[0]})({self.factors[1]})"
        )
        pre = "" if is_zero(self.prefactor - 1) else f"{self.prefactor} * "
        return pre + body


def verify_factorization(q: QuadraticForm, f: Factorization, mu: MuParams, tol=None) -> bool:
    if any(l.n != q.n for l in f.factors) or mu.n != q.n:
        return False
    if f.kind not in ("square", "product") or len(f.factors) != (1 if f.kind == "square" else 2):
        return False
    return f.expand(mu).eq(q, tol)


def _verified(q, f: Factorization, mu, tol) -> Factorization | None:
    if verify_factorization(q, f, mu, tol):
        return Factorization(f.kind, f.factors, f.prefactor, f.provenance, f.signs, True)
    return None


# -- squares ----------------------------------------------------------------


def factor_square(q: QuadraticForm, mu: MuParams, tol=None) -> Factorization | None:
    """Find L with Q = L^2, or None.

    Any such L has coefficients with alpha_i^2 = a_ii, so trying every sign
    pattern over the square roots of the diagonal is exhaustive.
    """
    if q.n != mu.n:
        raise DimensionError("form and mu disagree on n")
    roots = [sqrt_candidates(c, tol) for c in q.diag]
    # fix the sign of the first nonzero coefficient; -L gives the same square
    lead = next((i for i, r in enumerate(roots) if len(r) == 2), None)
    if lead is not None:
        roots[lead] = roots[lead][:1]
    for coeffs in product(*roots):
        cand = Factorization("square", (LinearForm(coeffs),), Fraction(1), "square: sign enumeration over sqrt(a_ii)")
        found = _verified(q, cand, mu, tol)
        if found is not None:
            return found
    return None


# -- products ---------------------------------------------------------------


def _half(x):
    return x * Fraction(1, 2)


def _coef(q: QuadraticForm, i: int, j: int):
    """Matrix entry a_ij (i <= j): c_ii for the diagonal, c_ij / 2 above it."""
    return q[i, i] if i == j else _half(q[i, j])


def _zero_like(q: QuadraticForm):
    return q[0, 0] * 0


def _leading_square(q, mu, idx, tol) -> Factorization | None:
    """Leading coefficient a_ll != 0: try

        a_ll^-1 [a_ll z_l + sum mu_jl (a_lj + X_j) z_j] [a_ll z_l + sum (a_lj - X_j) z_j]

    with X_j^2 = a_lj^2 - mu_lj a_ll a_jj, over every sign choice.
    """
    n = q.n
    l, rest = idx[0], idx[1:]
    all_ = _coef(q, l, l)
    roots = []
    for j in rest:
        a_lj = _coef(q, l, j)
        roots.append(sqrt_candidates(a_lj**2 - mu[l, j] * all_ * _coef(q, j, j), tol)[0])
    k = len(rest)
    signs = sign_choices(k) if k <= 3 else [tuple(s) for s in product((1, -1), repeat=k)]
    zero = _zero_like(q)
    pre = inv(all_)
    for sign in signs:
        left = [zero] * n
        right = [zero] * n
        left[l] = right[l] = all_
        for s, j, r in zip(sign, rest, roots):
            a_lj = _coef(q, l, j)
            left[j] = mu[j, l] * (a_lj + s * r)
            right[j] = a_lj - s * r
        cand = Factorization(
            "product",
            (LinearForm(left), LinearForm(right)),
            pre,
            f"product: leading coefficient of z{l + 1} nonzero (root signs {''.join('+' if s > 0 else '-' for s in sign[:k])})",
            SignChoice(*sign) if k <= 3 else None,
        )
        found = _verified(q, cand, mu, tol)
        if found is not None:
            return found
    return None


def _leading_zero_candidates(q, mu, idx, tol) -> list[Factorization]:
    """Leading coefficient a_ll = 0 and some a_lk != 0.

    Either z_l sits only in the left factor,
        (z_l + sum u_j z_j)(sum 2 a_lj z_j),
    or only in the right factor,
        (sum 2 mu_jl a_lj z_j)(z_l + sum v_j z_j).
    Coefficients of z_j with a_lj != 0 come from the z_j^2 terms; the others
    from the cross term with the first k having a_lk != 0.
    """
    n = q.n
    l, rest = idx[0], idx[1:]
    J = [j for j in rest if not is_zero(_coef(q, l, j), tol)]
    k = J[0]
    zero = _zero_like(q)

    # z_l in the left factor
    beta = [zero] * n
    for j in J:
        beta[j] = 2 * _coef(q, l, j)
    u = [zero] * n
    u[l] = zero + 1
    for j in rest:
        if j in J:
            u[j] = q[j, j] * inv(beta[j])
        elif j < k:
            # c_jk = u_j b_k
            u[j] = q[j, k] * inv(beta[k])
        else:
            # c_kj = mu_kj u_j b_k
            u[j] = q[k, j] * inv(mu[k, j] * beta[k])
    q1 = Factorization(
        "product",
        (LinearForm(u), LinearForm(beta)),
        zero + 1,
        f"product: a{l + 1}{l + 1} = 0, z{l + 1} in the left factor",
    )

    # z_l in the right factor
    alpha = [zero] * n
    for j in J:
        alpha[j] = 2 * mu[j, l] * _coef(q, l, j)
    v = [zero] * n
    v[l] = zero + 1
    for j in rest:
        if j in J:
            v[j] = q[j, j] * inv(alpha[j])
        elif j < k:
            # c_jk = mu_jk a_k v_j
            v[j] = q[j, k] * inv(mu[j, k] * alpha[k])
        else:
            # c_kj = a_k v_j
            v[j] = q[k, j] * inv(alpha[k])
    q2 = Factorization(
        "product",
        (LinearForm(alpha), LinearForm(v)),
        zero + 1,
        f"product: a{l + 1}{l + 1} = 0, z{l + 1} in the right factor",
    )
    return [q1, q2]


def _factor_on(q: QuadraticForm, mu: MuParams, idx: Sequence[int], tol) -> Factorization | None:
    """Factor a form whose support lies in the generators ``idx`` (ascending)."""
    n = q.n
    zero = _zero_like(q)
    l = idx[0]
    if len(idx) == 1:
        e = [zero] * n
        e[l] = zero + 1
        c = [zero] * n
        c[l] = q[l, l]
        return _verified(q, Factorization("product", (LinearForm(c), LinearForm(e)), zero + 1, f"product: single generator z{l + 1}"), mu, tol)
    if not is_zero(q[l, l], tol):
        return _leading_square(q, mu, idx, tol)
    if all(is_zero(q[l, j], tol) for j in idx[1:]):
        return _factor_on(q, mu, idx[1:], tol)
    for cand in _leading_zero_candidates(q, mu, idx, tol):
        found = _verified(q, cand, mu, tol)
        if found is not None:
            return found
    return None


def factor_product_a11zero(q: QuadraticForm, mu: MuParams, tol=None) -> Factorization | None:
    if q.n != mu.n:
        raise DimensionError("form and mu disagree on n")
    if not is_zero(q[0, 0], tol):
        raise ValueError("factor_product_a11zero requires a11 = 0")
    return _factor_on(q, mu, list(range(q.n)), tol)


def factor_product_a11nonzero(q: QuadraticForm, mu: MuParams, tol=None) -> Factorization | None:
    if q.n != mu.n:
        raise DimensionError("form and mu disagree on n")
    if is_zero(q[0, 0], tol):
        raise ValueError("factor_product_a11nonzero requires a11 != 0")
    return _leading_square(q, mu, list(range(q.n)), tol)


def factor_product(q: QuadraticForm, mu: MuParams, tol=None) -> Factorization | None:
    if is_zero(q[0, 0], tol):
        return factor_product_a11zero(q, mu, tol)
    return factor_product_a11nonzero(q, mu, tol)


def factor(q: QuadraticForm, mu: MuParams, tol=None) -> Factorization | None:
    """Square if possible, otherwise a product, otherwise None."""
    return factor_square(q, mu, tol) or factor_product(q, mu, tol)
