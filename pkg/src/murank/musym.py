"""mu-symmetric matrices and their bijection with quadratic forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalar import is_zero
from .skewring import DimensionError, MuParams, QuadraticForm, pairs


class MuSymmetryError(ValueError):
    pass


@dataclass(frozen=True)
class MuSymMatrix:
    """Full n x n matrix with M_ij = mu_ij M_ji.

    ``a(i, j)`` is the 1-based accessor for the representative entry M_ij,
    i <= j, matching the usual a_11, a_12, ... naming.
    """

    entries: tuple[tuple, ...]
    mu: MuParams

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def a(self, i: int, j: int):
        if i > j:
            i, j = j, i
        return self.entries[i - 1][j - 1]

    def check(self, tol=None) -> "MuSymMatrix":
        for i in range(self.n):
            for j in range(self.n):
                if not is_zero(self[i, j] - self.mu[i, j] * self[j, i], tol):
                    raise MuSymmetryError(f"M{i + 1}{j + 1} != mu{i + 1}{j + 1} * M{j + 1}{i + 1}")
        return self

    def scale(self, c) -> "MuSymMatrix":
        return MuSymMatrix(tuple(tuple(c * x for x in row) for row in self.entries), self.mu)


def matrix_from_form(q: QuadraticForm, mu: MuParams) -> MuSymMatrix:
    if q.n != mu.n:
        raise DimensionError(f"form has n={q.n}, mu has n={mu.n}")
    n = q.n
    half = Fraction(1, 2)
    rows = [[None] * n for _ in range(n)]
    for i, j in pairs(n):
        if i == j:
            rows[i][i] = q[i, i]
        else:
            rows[i][j] = q[i, j] * half
            rows[j][i] = mu[j, i] * q[i, j] * half
    return MuSymMatrix(tuple(tuple(r) for r in rows), mu)


def form_from_matrix(m: MuSymMatrix, mu: MuParams | None = None, tol=None) -> QuadraticForm:
    """Expand z^T M z into normal order: c_ij = M_ij + mu_ij M_ji."""
    mu = m.mu if mu is None else mu
    if mu.n != m.n:
        raise DimensionError(f"matrix has n={m.n}, mu has n={mu.n}")
    MuSymMatrix(m.entries, mu).check(tol)
    c = {}
    for i, j in pairs(m.n):
        c[i, j] = m[i, i] if i == j else m[i, j] + mu[i, j] * m[j, i]
    return QuadraticForm(m.n, c)


def matrix_from_upper(a: dict[tuple[int, int], object], mu: MuParams) -> MuSymMatrix:
    """Build M from representative entries a[(i, j)], 0-based, i <= j."""
    n = mu.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in a.items():
        if i > j:
            raise MuSymmetryError("entries must be given for i <= j")
        rows[i][j] = v
        if i != j:
            rows[j][i] = mu[j, i] * v
    return MuSymMatrix(tuple(tuple(r) for r in rows), mu)
