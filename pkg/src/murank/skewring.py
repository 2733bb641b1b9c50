"""Degree <= 2 arithmetic in the skew polynomial ring.

The ring is generated by z_1..z_n subject to z_j z_i = mu_ij z_i z_j.  Indices
are 0-based in code and 1-based in rendered text.  A quadratic form is kept in
normal order: only monomials z_i z_j with i <= j are stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .scalar import inv, is_zero, to_complexf


class DimensionError(ValueError):
    pass


class MuError(ValueError):
    """The multiplier matrix violates mu_ii = 1, mu_ij mu_ji = 1 or mu_ij != 0."""


def pairs(n: int) -> list[tuple[int, int]]:
    """Normal-order monomial indices (i <= j), diagonal first."""
    return [(i, i) for i in range(n)] + [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class MuParams:
    entries: tuple[tuple, ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise MuError("mu must be a square matrix")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def ones(cls, n: int) -> "MuParams":
        return cls(tuple(tuple(Fraction(1) for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_upper(cls, n: int, upper: Mapping[tuple[int, int], object], tol=None) -> "MuParams":
        """Build from the strict upper triangle; the lower triangle is filled with reciprocals."""
        rows = [[Fraction(1)] * n for _ in range(n)]
        for (i, j), v in upper.items():
            if not (0 <= i < j < n):
                raise MuError(f"mu index ({i + 1},{j + 1}) is not in the strict upper triangle")
            if is_zero(v, tol):
                raise MuError(f"mu{i + 1}{j + 1} must be nonzero")
            rows[i][j] = v
            rows[j][i] = inv(v)
        mu = cls(tuple(tuple(r) for r in rows))
        return mu

    def validate(self, tol=None) -> "MuParams":
        n = self.n
        for i in range(n):
            if not is_zero(self[i, i] - 1, tol):
                raise MuError(f"mu{i + 1}{i + 1} must be 1")
            for j in range(n):
                if is_zero(self[i, j], tol):
                    raise MuError(f"mu{i + 1}{j + 1} must be nonzero")
                if i != j and not is_zero(self[i, j] * self[j, i] - 1, tol):
                    raise MuError(f"mu{i + 1}{j + 1} * mu{j + 1}{i + 1} must be 1")
        return self

    def map(self, f) -> "MuParams":
        return MuParams(tuple(tuple(f(x) for x in row) for row in self.entries))

    def to_complex(self) -> "MuParams":
        return self.map(to_complexf)


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def scale(self, c) -> "LinearForm":
        return LinearForm(c * a for a in self.coeffs)

    def map(self, f) -> "LinearForm":
        return LinearForm(f(a) for a in self.coeffs)

    def __str__(self):
        return render_linear(self)


class QuadraticForm:
    """Normal-form coefficients c_ij (i <= j) of an element of S_2.

    ``c[i, j]`` is the coefficient of z_i z_j; for i < j this is twice the
    matrix entry a_ij.  Missing coefficients are zero.
    """

    __slots__ = ("n", "_c")

    def __init__(self, n: int, coeffs: Mapping[tuple[int, int], object] | None = None, zero=Fraction(0)):
        self.n = n
        c = {ij: zero for ij in pairs(n)}
        for (i, j), v in (coeffs or {}).items():
            if not (0 <= i <= j < n):
                raise DimensionError(f"monomial z{i + 1}*z{j + 1} is not in normal order for n={n}")
            c[i, j] = v
        self._c = c

    def __getitem__(self, ij):
        i, j = ij
        if i > j:
            i, j = j, i
        return self._c[i, j]

    @property
    def diag(self) -> tuple:
        return tuple(self._c[i, i] for i in range(self.n))

    @property
    def upper(self) -> dict[tuple[int, int], object]:
        return {(i, j): v for (i, j), v in self._c.items() if i < j}

    def items(self):
        return [(ij, self._c[ij]) for ij in pairs(self.n)]

    def map(self, f) -> "QuadraticForm":
        return QuadraticForm(self.n, {ij: f(v) for ij, v in self._c.items()})

    def to_complex(self) -> "QuadraticForm":
        return self.map(to_complexf)

    def is_zero(self, tol=None) -> bool:
        return all(is_zero(v, tol) for v in self._c.values())

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        _check_n(self.n, other.n)
        return QuadraticForm(self.n, {ij: self._c[ij] + other._c[ij] for ij in self._c})

    def __sub__(self, other: "QuadraticForm") -> "QuadraticForm":
        _check_n(self.n, other.n)
        return QuadraticForm(self.n, {ij: self._c[ij] - other._c[ij] for ij in self._c})

    def __neg__(self):
        return self.map(lambda v: -v)

    def scale(self, c) -> "QuadraticForm":
        return self.map(lambda v: c * v)

    def eq(self, other: "QuadraticForm", tol=None) -> bool:
        return (self - other).is_zero(tol)

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm) or other.n != self.n:
            return NotImplemented
        return self.eq(other)

    __hash__ = None

    def __str__(self):
        return render_form(self)

    def __repr__(self):
        return f"QuadraticForm(n={self.n}, {render_form(self)!r})"


def _check_n(*ns):
    if len(set(ns)) != 1:
        raise DimensionError(f"dimension mismatch: {ns}")


def add(q1: QuadraticForm, q2: QuadraticForm) -> QuadraticForm:
    return q1 + q2


def scale(q: QuadraticForm, c) -> QuadraticForm:
    return q.scale(c)


def eq(q1: QuadraticForm, q2: QuadraticForm, tol=None) -> bool:
    _check_n(q1.n, q2.n)
    return q1.eq(q2, tol)


def multiply_linear(l1: LinearForm, l2: LinearForm, mu: MuParams) -> QuadraticForm:
    """Normal-ordered product l1 * l2.

    c_ii = a_i b_i and c_ij = a_i b_j + mu_ij a_j b_i for i < j, since the
    word z_j z_i rewrites to mu_ij z_i z_j.
    """
    _check_n(l1.n, l2.n, mu.n)
    n = mu.n
    c = {}
    for i, j in pairs(n):
        if i == j:
            c[i, i] = l1[i] * l2[i]
        else:
            c[i, j] = l1[i] * l2[j] + mu[i, j] * l1[j] * l2[i]
    return QuadraticForm(n, c)


def _fmt_coeff(c, first: bool) -> tuple[str, str]:
    """Split a coefficient into (sign, body); body '' means unit."""
    s = str(c)
    if s.startswith("(") or " " in s:
        return ("" if first else "+ ", s + "*")
    neg = s.startswith("-")
    body = s[1:] if neg else s
    sign = ("-" if neg else "") if first else ("- " if neg else "+ ")
    return sign, ("" if body == "1" else body + "*")


def render_terms(terms, tol=None) -> str:
    out = []
    for c, mono in terms:
        if is_zero(c, tol):
            continue
        sign, body = _fmt_coeff(c, not out)
        out.append(f"{sign}{body}{mono}")
    return " ".join(out) if out else "0"


def render_form(q: QuadraticForm, tol=None) -> str:
    """Canonical text: ascending indices, zero terms omitted."""
    terms = []
    for i, j in pairs(q.n):
        mono = f"z{i + 1}^2" if i == j else f"z{i + 1}*z{j + 1}"
        terms.append((q[i, j], mono))
    # diagonal-first storage; render in lexicographic monomial order
    terms.sort(key=lambda t: _mono_order(t[1]))
    return render_terms(terms, tol)


def _mono_order(mono: str) -> tuple[int, int]:
    if mono.endswith("^2"):
        i = int(mono[1:-2])
        return (i, i)
    a, b = mono.split("*")
    return (int(a[1:]), int(b[1:]))


def render_linear(l: LinearForm, tol=None) -> str:
    return render_terms([(c, f"z{i + 1}") for i, c in enumerate(l.coeffs)], tol)
