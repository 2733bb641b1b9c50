"""mu-minors, mu-determinants and the mu-rank classifiers for n = 3 and n = 4."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple, Sequence

from .musym import MuSymMatrix, matrix_from_form
from .scalar import (
    QuadExt,
    all_zero,
    inv,
    is_one,
    is_zero,
    principal_sqrt,
    sign_flip,
    to_json,
)
from .skewring import DimensionError, MuParams, QuadraticForm, pairs


class Rank(enum.Enum):
    ZERO = "0"
    ONE = "1"
    TWO = "2"
    THREE = "3"
    AT_LEAST_THREE = ">=3"

    def at_most_two(self) -> bool:
        return self in (Rank.ZERO, Rank.ONE, Rank.TWO)

    def same_verdict(self, other: "Rank") -> bool:
        """Equality where rank 3 (n=3) and AT_LEAST_THREE (n=4) coincide."""
        high = (Rank.THREE, Rank.AT_LEAST_THREE)
        return self is other or (self in high and other in high)


class SignChoice(NamedTuple):
    x: int = 1
    y: int = 1
    z: int = 1

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self)


def sign_choices(k: int) -> list[SignChoice]:
    """+++ first, then flipping the last root fastest."""
    return [SignChoice(*s, *([1] * (3 - k))) for s in product((1, -1), repeat=k)]


@dataclass
class RankReport:
    n: int
    rank: Rank
    d_values: dict[int, object] = field(default_factory=dict)
    witness_signs: SignChoice | None = None
    normalized: bool = False

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank.value,
            "d_values": {str(k): to_json(v) for k, v in sorted(self.d_values.items())},
            "witness_signs": list(self.witness_signs) if self.witness_signs else None,
            "normalized": self.normalized,
        }


def _require(m: MuSymMatrix, n: int):
    if m.n != n:
        raise DimensionError(f"expected a {n}x{n} matrix, got n={m.n}")


# -- n = 3 ------------------------------------------------------------------


def _entries3(m: MuSymMatrix):
    a, b, c = m.a(1, 1), m.a(2, 2), m.a(3, 3)
    d, e, f = m.a(1, 2), m.a(1, 3), m.a(2, 3)
    return a, b, c, d, e, f


def minors3(m: MuSymMatrix) -> tuple:
    """The six 2x2 mu-minors D1..D6."""
    _require(m, 3)
    a, b, c, d, e, f = _entries3(m)
    mu = m.mu
    m12, m13, m23 = mu[0, 1], mu[0, 2], mu[1, 2]
    return (
        4 * d**2 - (1 + m12) ** 2 * a * b,
        4 * e**2 - (1 + m13) ** 2 * a * c,
        4 * f**2 - (1 + m23) ** 2 * b * c,
        2 * (1 + m23) * d * e - (1 + m12) * (1 + m13) * a * f,
        2 * (1 + m12) * e * f - (1 + m13) * (1 + m23) * c * d,
        2 * (1 + m13) * d * f - (1 + m12) * (1 + m23) * b * e,
    )


def discriminants3(m: MuSymMatrix) -> tuple:
    """X^2 = d^2 - mu12 ab and Y^2 = e^2 - mu13 ac."""
    a, b, c, d, e, f = _entries3(m)
    return d**2 - m.mu[0, 1] * a * b, e**2 - m.mu[0, 2] * a * c


def d7_brackets(m: MuSymMatrix) -> tuple:
    _require(m, 3)
    a, b, c, d, e, f = _entries3(m)
    mu = m.mu
    first = mu[1, 2] * c * d**2 - 2 * d * e * f + b * e**2
    second = mu[0, 2] * mu[1, 0] * c * d**2 - 2 * d * e * f + mu[0, 1] * mu[1, 2] * mu[2, 0] * b * e**2
    return first, second


def dets3(m: MuSymMatrix, sign: SignChoice = SignChoice(), roots: Sequence | None = None, tol=None) -> tuple:
    """The mu-determinants (D7, D8); D8 uses roots X, Y signed by ``sign``.

    ``roots`` overrides the principal roots (X, Y) of the discriminants.
    """
    _require(m, 3)
    a, b, c, d, e, f = _entries3(m)
    mu = m.mu
    first, second = d7_brackets(m)
    d7 = first * second
    if roots is None:
        roots = [principal_sqrt(s, tol) for s in discriminants3(m)]
    X, Y = sign.x * roots[0], sign.y * roots[1]
    d8 = mu[1, 0] * (d + X) * (e - Y) + mu[1, 2] * mu[2, 0] * (d - X) * (e + Y) - 2 * a * f
    return d7, d8


# -- n = 4 ------------------------------------------------------------------


def _entries4(m: MuSymMatrix) -> dict[str, object]:
    out = {}
    for i, j in pairs(4):
        out[f"a{i + 1}{j + 1}"] = m[i, j]
    return out


def _mus4(mu: MuParams) -> dict[str, object]:
    return {f"m{i + 1}{j + 1}": mu[i, j] for i in range(4) for j in range(4) if i != j}


def minors4(m: MuSymMatrix) -> tuple:
    """The twenty-one 3x3 mu-minors D1..D21."""
    _require(m, 4)
    A = _entries4(m)
    U = _mus4(m.mu)
    a11, a22, a33, a44 = A["a11"], A["a22"], A["a33"], A["a44"]
    a12, a13, a14, a23, a24, a34 = A["a12"], A["a13"], A["a14"], A["a23"], A["a24"], A["a34"]
    p12, p13, p14 = 1 + U["m12"], 1 + U["m13"], 1 + U["m14"]
    p23, p24, p34 = 1 + U["m23"], 1 + U["m24"], 1 + U["m34"]
    return (
        4 * a12**2 - p12**2 * a11 * a22,  # D1
        4 * a13**2 - p13**2 * a11 * a33,
        4 * a14**2 - p14**2 * a11 * a44,
        4 * a23**2 - p23**2 * a22 * a33,
        4 * a24**2 - p24**2 * a22 * a44,
        4 * a34**2 - p34**2 * a33 * a44,
        2 * p23 * a12 * a13 - p12 * p13 * a11 * a23,  # D7
        2 * p24 * a12 * a14 - p12 * p14 * a11 * a24,
        2 * p13 * a12 * a23 - p12 * p23 * a13 * a22,
        2 * p14 * a12 * a24 - p12 * p24 * a14 * a22,
        2 * p34 * a13 * a14 - p13 * p14 * a11 * a34,  # D11
        2 * p12 * a13 * a23 - p13 * p23 * a33 * a12,
        2 * p14 * a13 * a34 - p13 * p34 * a33 * a14,
        2 * p12 * a14 * a24 - p14 * p24 * a12 * a44,
        2 * p13 * a14 * a34 - p14 * p34 * a13 * a44,
        2 * p34 * a23 * a24 - p23 * p24 * a22 * a34,  # D16
        2 * p24 * a23 * a34 - p23 * p34 * a33 * a24,
        2 * p23 * a24 * a34 - p24 * p34 * a23 * a44,
        p13 * p24 * a12 * a34 - p12 * p34 * a13 * a24,  # D19
        p14 * p23 * a13 * a24 - p13 * p24 * a14 * a23,
        p12 * p34 * a14 * a23 - p14 * p23 * a12 * a34,
    )


@dataclass(frozen=True)
class BracketDet:
    """A product-form mu-determinant, kept as its two bracket factors."""

    first: object
    second: object

    @property
    def value(self):
        return self.first * self.second

    def vanishing(self, tol=None) -> tuple[bool, bool]:
        return is_zero(self.first, tol), is_zero(self.second, tol)


def dets4_brackets(m: MuSymMatrix) -> tuple[BracketDet, BracketDet, BracketDet]:
    """D22, D23, D24 as bracket pairs."""
    _require(m, 4)
    A = _entries4(m)
    U = _mus4(m.mu)
    a22, a33, a44 = A["a22"], A["a33"], A["a44"]
    a12, a13, a14, a23, a24, a34 = A["a12"], A["a13"], A["a14"], A["a23"], A["a24"], A["a34"]
    m12, m13, m14, m21, m23, m24 = U["m12"], U["m13"], U["m14"], U["m21"], U["m23"], U["m24"]
    m31, m34, m41 = U["m31"], U["m34"], U["m41"]
    d22 = BracketDet(
        m23 * a33 * a12**2 - 2 * a23 * a12 * a13 + a22 * a13**2,
        m13 * m21 * a33 * a12**2 - 2 * a23 * a12 * a13 + m23 * m12 * m31 * a22 * a13**2,
    )
    d23 = BracketDet(
        m24 * a44 * a12**2 - 2 * a24 * a12 * a14 + a22 * a14**2,
        m14 * m21 * a44 * a12**2 - 2 * a24 * a12 * a14 + m24 * m12 * m41 * a22 * a14**2,
    )
    d24 = BracketDet(
        m34 * a44 * a13**2 - 2 * a34 * a13 * a14 + a33 * a14**2,
        m14 * m31 * a44 * a13**2 - 2 * a34 * a13 * a14 + m34 * m13 * m41 * a33 * a14**2,
    )
    return d22, d23, d24


def dets4_a11zero(m: MuSymMatrix) -> tuple:
    """(D22, D23, D24); see :func:`dets4_brackets` for the factors."""
    return tuple(b.value for b in dets4_brackets(m))


def discriminants4(m: MuSymMatrix) -> tuple:
    """X^2, Y^2, Z^2 = a1j^2 - mu1j a11 ajj for j = 2, 3, 4."""
    _require(m, 4)
    a11 = m[0, 0]
    return tuple(m[0, j] ** 2 - m.mu[0, j] * a11 * m[j, j] for j in (1, 2, 3))


def dets4_a11nonzero(m: MuSymMatrix, sign: SignChoice = SignChoice(), roots: Sequence | None = None, tol=None) -> tuple:
    """(D25, D26, D27) for the roots (X, Y, Z) signed by ``sign``."""
    _require(m, 4)
    A = _entries4(m)
    U = _mus4(m.mu)
    a11, a12, a13, a14 = A["a11"], A["a12"], A["a13"], A["a14"]
    a23, a24, a34 = A["a23"], A["a24"], A["a34"]
    m21, m23, m24, m31, m34, m41 = U["m21"], U["m23"], U["m24"], U["m31"], U["m34"], U["m41"]
    if roots is None:
        roots = [principal_sqrt(s, tol) for s in discriminants4(m)]
    X, Y, Z = sign.x * roots[0], sign.y * roots[1], sign.z * roots[2]
    d25 = m21 * (a12 + X) * (a13 - Y) + m23 * m31 * (a13 + Y) * (a12 - X) - 2 * a23 * a11
    d26 = m21 * (a12 + X) * (a14 - Z) + m24 * m41 * (a14 + Z) * (a12 - X) - 2 * a24 * a11
    d27 = m31 * (a13 + Y) * (a14 - Z) + m34 * m41 * (a14 + Z) * (a13 - Y) - 2 * a34 * a11
    return d25, d26, d27


# -- sign enumeration ---------------------------------------------------------


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) or (isinstance(x, QuadExt) and x.is_rational())


def _flip_set(roots: Sequence, sign: SignChoice):
    """Symbols whose joint sign flip maps each root r_k to sign_k * r_k.

    Returns None when no sign-flip automorphism realizes ``sign`` (a root is
    rational, or the roots are linearly dependent over the squares).
    """
    monos = []
    for r, s in zip(roots, sign):
        if isinstance(r, QuadExt) and r.coords:
            if len(r.coords) != 1:
                return None
            monos.append((next(iter(r.coords)), s))
        elif s == -1 and not is_zero(r):
            return None
    syms = sorted(set().union(*[m for m, _ in monos])) if monos else []
    for k in range(len(syms) + 1):
        for flip in combinations(syms, k):
            fs = set(flip)
            if all((-1) ** len(m & fs) == s for m, s in monos):
                return fs
    return None


def _apply_flip(x, symbols):
    for s in symbols:
        if isinstance(x, QuadExt) and s in x.squares:
            x = sign_flip(x, s)
    return x


def _root_setup(m: MuSymMatrix, which: str, tol):
    if which == "dets3":
        _require(m, 3)
        discs, k = discriminants3(m), 2
        evaluate = lambda sign, roots: dets3(m, sign, roots, tol)[1:]
    elif which == "dets4":
        _require(m, 4)
        discs, k = discriminants4(m), 3
        evaluate = lambda sign, roots: dets4_a11nonzero(m, sign, roots, tol)
    else:
        raise ValueError(f"unknown determinant family {which!r}")
    roots = [principal_sqrt(s, tol) for s in discs]
    return roots, k, evaluate


def sign_table(m: MuSymMatrix, which: str, tol=None, brute: bool = False) -> list[tuple[SignChoice, tuple]]:
    """Determinant values for every sign choice, in enumeration order.

    On exact input the table is produced from one evaluation by applying
    sign-flip automorphisms where one exists; ``brute`` evaluates every
    choice directly.
    """
    roots, k, evaluate = _root_setup(m, which, tol)
    choices = sign_choices(k)
    exact_inputs = all(_is_rational(x) for row in m.entries for x in row) and all(
        _is_rational(x) for row in m.mu.entries for x in row
    )
    base = evaluate(choices[0], roots)
    table = []
    for sign in choices:
        flip = None if (brute or not exact_inputs) else _flip_set(roots, sign)
        if flip is not None:
            vals = tuple(_apply_flip(v, flip) for v in base)
        else:
            vals = evaluate(sign, roots)
        table.append((sign, vals))
    return table


def exists_sign_vanishing(m: MuSymMatrix, which: str, tol=None, brute: bool = False):
    """First sign choice making every targeted determinant vanish.

    ``which`` is ``"dets3"`` (D8) or ``"dets4"`` (D25, D26, D27 under one
    common choice).  Returns ``(found, sign, values)`` where values belong to
    the witness, or to +++ when nothing vanishes.
    """
    table = sign_table(m, which, tol, brute)
    for sign, vals in table:
        if all_zero(vals, tol):
            return True, sign, vals
    return False, None, table[0][1]


# -- classifiers ------------------------------------------------------------


def _normalize(q: QuadraticForm, tol):
    a11 = q[0, 0]
    if is_zero(a11, tol) or is_one(a11, tol):
        return q, False
    return q.scale(inv(a11)), True


def murank3(q: QuadraticForm, mu: MuParams, tol=None) -> RankReport:
    if q.n != 3 or mu.n != 3:
        raise DimensionError("murank3 needs n = 3")
    if q.is_zero(tol):
        m = matrix_from_form(q, mu)
        return RankReport(3, Rank.ZERO, dict(enumerate(minors3(m), 1)))
    q, normalized = _normalize(q, tol)
    m = matrix_from_form(q, mu)
    d = dict(enumerate(minors3(m), 1))
    if all_zero(d.values(), tol):
        return RankReport(3, Rank.ONE, d, normalized=normalized)
    if is_zero(q[0, 0], tol):
        d[7] = dets3(m, tol=tol)[0]
        rank = Rank.TWO if is_zero(d[7], tol) else Rank.THREE
        return RankReport(3, rank, d, normalized=normalized)
    found, sign, vals = exists_sign_vanishing(m, "dets3", tol)
    d[8] = vals[0]
    return RankReport(3, Rank.TWO if found else Rank.THREE, d, sign, normalized)


def murank4(q: QuadraticForm, mu: MuParams, tol=None) -> RankReport:
    if q.n != 4 or mu.n != 4:
        raise DimensionError("murank4 needs n = 4")
    if q.is_zero(tol):
        m = matrix_from_form(q, mu)
        return RankReport(4, Rank.ZERO, dict(enumerate(minors4(m), 1)))
    q, normalized = _normalize(q, tol)
    m = matrix_from_form(q, mu)
    d = dict(enumerate(minors4(m), 1))
    if all_zero(d.values(), tol):
        return RankReport(4, Rank.ONE, d, normalized=normalized)
    if is_zero(q[0, 0], tol):
        d.update(zip((22, 23, 24), dets4_a11zero(m)))
        ok = all_zero((d[22], d[23], d[24]), tol)
        return RankReport(4, Rank.TWO if ok else Rank.AT_LEAST_THREE, d, normalized=normalized)
    found, sign, vals = exists_sign_vanishing(m, "dets4", tol)
    d.update(zip((25, 26, 27), vals))
    return RankReport(4, Rank.TWO if found else Rank.AT_LEAST_THREE, d, sign, normalized)


def murank(q: QuadraticForm, mu: MuParams, tol=None) -> RankReport:
    if q.n == 3:
        return murank3(q, mu, tol)
    if q.n == 4:
        return murank4(q, mu, tol)
    raise DimensionError(f"mu-rank is implemented for n = 3 and n = 4, not n = {q.n}")


def all_d_values(q: QuadraticForm, mu: MuParams, tol=None) -> dict:
    """Every D-function of the (unnormalized) form, with the +++ root choice
    for D8 / D25..D27 unless another choice makes them vanish."""
    m = matrix_from_form(q, mu)
    if q.n == 3:
        d = dict(enumerate(minors3(m), 1))
        _, sign, vals = exists_sign_vanishing(m, "dets3", tol)
        d[7] = dets3(m, tol=tol)[0]
        d[8] = vals[0]
    elif q.n == 4:
        d = dict(enumerate(minors4(m), 1))
        d.update(zip((22, 23, 24), dets4_a11zero(m)))
        _, sign, vals = exists_sign_vanishing(m, "dets4", tol)
        d.update(zip((25, 26, 27), vals))
    else:
        raise DimensionError(f"no D-functions for n = {q.n}")
    return {"d_values": d, "signs": sign}


def relabel(q: QuadraticForm, mu: MuParams, perm: Sequence[int]) -> tuple[QuadraticForm, MuParams]:
    """Rename z_i to z_perm[i] (0-based); mu'_{perm i, perm j} = mu_ij."""
    n = q.n
    if mu.n != n or sorted(perm) != list(range(n)):
        raise ValueError(f"invalid permutation {list(perm)} for n = {n}")
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows[perm[i]][perm[j]] = mu[i, j]
    new_mu = MuParams(tuple(tuple(r) for r in rows))
    c = {}
    for (i, j), v in q.items():
        pi, pj = perm[i], perm[j]
        if pi <= pj:
            c[pi, pj] = v
        else:
            # z_pi z_pj = mu'_{pj pi} z_pj z_pi = mu_ji z_pj z_pi
            c[pj, pi] = mu[j, i] * v
    return QuadraticForm(n, c), new_mu
