"""Random instances and a brute-force factor search used as ground truth.

The grid search shares no code with :mod:`murank.factor` or
:mod:`murank.rankcore`: it expands candidate pairs with its own integer
arithmetic in numpy and only compares proportionality with the target.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Sequence

import numpy as np

from .factor import Factorization, factor_product, factor_square, verify_factorization
from .parser import form_to_json, mu_to_json
from .rankcore import Rank, murank
from .scalar import ComplexF, to_json
from .skewring import LinearForm, MuParams, QuadraticForm, multiply_linear, pairs

COEFF_GRID = tuple(sorted({Fraction(k) * s for k in (-2, -1, 0, 1, 2) for s in (1, Fraction(1, 2))}))
MU_GRID = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-2), Fraction(3), Fraction(-1, 3))

SHAPES = ("square", "p14", "p15", "p16", "generic")


@dataclass(frozen=True)
class InstanceSpec:
    n: int = 4
    backend: str = "exact"  # "exact" draws from the grids, "complex" from gaussians / unit circle
    grid: tuple = COEFF_GRID
    mu_grid: tuple = MU_GRID
    seed: int = 0

    def __post_init__(self):
        if self.n not in (3, 4):
            raise ValueError("instances are generated for n = 3 or 4")
        if self.backend not in ("exact", "complex"):
            raise ValueError(f"unknown backend {self.backend!r}")


@dataclass
class Instance:
    shape: str
    q: QuadraticForm
    mu: MuParams
    factors: tuple = ()  # hidden ground truth: (L,) or (L1, L2, prefactor)
    seed: int | None = None

    def payload(self) -> dict:
        out = {
            "shape": self.shape,
            "seed": self.seed,
            "n": self.q.n,
            "mu": mu_to_json(self.mu),
            "form": form_to_json(self.q),
        }
        if self.factors:
            out["factors"] = [
                [to_json(c) for c in f.coeffs] if isinstance(f, LinearForm) else to_json(f) for f in self.factors
            ]
        return out


# -- sampling -----------------------------------------------------------------


def _rng(spec_or_rng) -> random.Random:
    if isinstance(spec_or_rng, random.Random):
        return spec_or_rng
    return random.Random(spec_or_rng.seed)


def random_mu(spec: InstanceSpec, rng: random.Random) -> MuParams:
    upper = {}
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            if spec.backend == "exact":
                upper[i, j] = rng.choice(spec.mu_grid)
            else:
                upper[i, j] = ComplexF(cmath.exp(1j * rng.uniform(-math.pi, math.pi)))
    return MuParams.from_upper(spec.n, upper)


def _scalar(spec: InstanceSpec, rng: random.Random, nonzero: bool = False):
    if spec.backend == "exact":
        pool = [g for g in spec.grid if g != 0] if nonzero else spec.grid
        return rng.choice(pool)
    return ComplexF(complex(rng.gauss(0, 1), rng.gauss(0, 1)))


def _zero(spec: InstanceSpec):
    return Fraction(0) if spec.backend == "exact" else ComplexF(0)


def random_linear(spec: InstanceSpec, rng: random.Random, first: str = "any") -> LinearForm:
    """``first`` is "any", "zero" or "nonzero" for the z1 coefficient."""
    coeffs = [_scalar(spec, rng) for _ in range(spec.n)]
    if first == "zero":
        coeffs[0] = _zero(spec)
    elif first == "nonzero":
        coeffs[0] = _scalar(spec, rng, nonzero=True)
    return LinearForm(coeffs)


def random_square(spec: InstanceSpec, rng=None) -> Instance:
    rng = _rng(rng or spec)
    mu = random_mu(spec, rng)
    L = random_linear(spec, rng)
    return Instance("square", multiply_linear(L, L, mu), mu, (L,))


def random_product(spec: InstanceSpec, shape: str = "p16", rng=None) -> Instance:
    """Products in the three shapes used for n = 4 (and their n = 3 analogues).

    p14: (a1 z1 + ...)(b2 z2 + ...), a1 != 0
    p15: (a2 z2 + ...)(b1 z1 + ...), b1 != 0
    p16: a11^-1 (a11 z1 + ...)(a11 z1 + ...), a11 != 0
    """
    rng = _rng(rng or spec)
    mu = random_mu(spec, rng)
    if shape == "p14":
        l1, l2 = random_linear(spec, rng, "nonzero"), random_linear(spec, rng, "zero")
        pre = 1
    elif shape == "p15":
        l1, l2 = random_linear(spec, rng, "zero"), random_linear(spec, rng, "nonzero")
        pre = 1
    elif shape == "p16":
        a11 = _scalar(spec, rng, nonzero=True)
        l1, l2 = random_linear(spec, rng), random_linear(spec, rng)
        l1 = LinearForm((a11, *l1.coeffs[1:]))
        l2 = LinearForm((a11, *l2.coeffs[1:]))
        pre = 1 / a11
    else:
        raise ValueError(f"unknown product shape {shape!r}")
    q = multiply_linear(l1, l2, mu).scale(pre)
    return Instance(shape, q, mu, (l1, l2, pre))


def random_generic(spec: InstanceSpec, rng=None) -> Instance:
    rng = _rng(rng or spec)
    mu = random_mu(spec, rng)
    q = QuadraticForm(spec.n, {ij: _scalar(spec, rng) for ij in pairs(spec.n)})
    return Instance("generic", q, mu)


def random_instance(spec: InstanceSpec, shape: str, rng=None) -> Instance:
    if shape == "square":
        return random_square(spec, rng)
    if shape == "generic":
        return random_generic(spec, rng)
    return random_product(spec, shape, rng)


def trial_seed(master: int, trial: int) -> int:
    return (master * 1_000_003 + trial * 7919) % (2**63)


# -- grid search --------------------------------------------------------------


class GridTooLarge(ValueError):
    pass


def _lcm(xs) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


def normalized_grid_vectors(grid: Sequence[Fraction], n: int) -> list[tuple[Fraction, ...]]:
    """Nonzero vectors over ``grid`` whose first nonzero entry is 1."""
    out = []
    values = list(grid)
    for lead in range(n):
        for tail in product(values, repeat=n - lead - 1):
            out.append((Fraction(0),) * lead + (Fraction(1),) + tuple(tail))
    return out


def grid_search_factor(
    q: QuadraticForm, mu: MuParams, grid: Sequence = COEFF_GRID, cap: int = 10**7
) -> Factorization | None:
    """Exhaustive search for q = c * L1 L2 with L1, L2 over ``grid``.

    Exact (rational) inputs only.  Each factor has its first nonzero
    coefficient normalized to 1 and c is solved from a pivot coefficient.
    """
    n = q.n
    grid = [Fraction(g) for g in grid]
    if len(grid) ** (2 * n) > cap:
        raise GridTooLarge(f"|G|^(2n) = {len(grid) ** (2 * n)} exceeds cap {cap}")
    for _, v in q.items():
        if not isinstance(v, (int, Fraction)):
            raise TypeError("grid search needs rational coefficients")
    for row in mu.entries:
        for x in row:
            if not isinstance(x, (int, Fraction)):
                raise TypeError("grid search needs rational mu")

    if q.is_zero():
        zero = LinearForm([Fraction(0)] * n)
        unit = LinearForm([Fraction(1)] + [Fraction(0)] * (n - 1))
        return Factorization("product", (zero, unit), Fraction(1), "grid search: zero form", verified=True)

    vecs = normalized_grid_vectors(grid, n)
    gden = _lcm(g.denominator for g in grid)
    mu_den = _lcm(mu[i, j].denominator for i in range(n) for j in range(n))
    keys = pairs(n)
    qvals = [Fraction(q[ij]) for ij in keys]
    qden = _lcm(x.denominator for x in qvals)
    Qint = [int(x * qden) for x in qvals]
    gmax = max(abs(int(g * gden)) for g in grid)
    mumax = max(abs(int(mu[i, j] * mu_den)) for i in range(n) for j in range(n))
    bound = gmax * gmax * (mu_den + mumax) * max(map(abs, Qint))
    dtype = np.int64 if bound < 2**62 else object

    V = np.array([[int(x * gden) for x in v] for v in vecs], dtype=dtype)
    A = V[:, None, :]
    B = V[None, :, :]
    # coefficient k of L1 L2 equals E_k / (gden^2 * mu_den)
    E = []
    for i, j in keys:
        if i == j:
            E.append(A[..., i] * B[..., i] * mu_den)
        else:
            E.append(A[..., i] * B[..., j] * mu_den + int(mu[i, j] * mu_den) * A[..., j] * B[..., i])
    m = next(k for k, x in enumerate(Qint) if x != 0)
    ok = E[m] != 0
    for k in range(len(keys)):
        if k != m:
            ok &= E[k] * Qint[m] == E[m] * Qint[k]
    hits = np.argwhere(ok)
    if len(hits) == 0:
        return None
    a, b = (int(t) for t in hits[0])
    l1, l2 = LinearForm(vecs[a]), LinearForm(vecs[b])
    c = Fraction(Qint[m], qden) / Fraction(int(E[m][a, b]), gden * gden * mu_den)
    f = Factorization("product", (l1, l2), c, "grid search")
    return Factorization(f.kind, f.factors, c, f.provenance, None, verify_factorization(q, f, mu))


# -- differential suite --------------------------------------------------------


@dataclass
class SuiteReport:
    trials: int = 0
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    inconsistencies: list = field(default_factory=list)

    def bump(self, key: str, by: int = 1):
        self.counts[key] = self.counts.get(key, 0) + by

    @property
    def ok(self) -> bool:
        return not self.failures and not self.inconsistencies

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "counts": dict(sorted(self.counts.items())),
            "failures": self.failures,
            "inconsistencies": self.inconsistencies,
            "ok": self.ok,
        }


def check_instance(inst: Instance, tol=None, grid: Sequence | None = None, cross_backend: bool = True) -> dict:
    """Run classifier, factorizer and (optionally) grid oracle on one instance.

    Returns a dict with the verdicts and lists of failure / inconsistency
    messages.  Failures contradict a known-true implication on a generated instance;
    inconsistencies are classifier / factorizer disagreements.
    """
    q, mu = inst.q, inst.mu
    report = murank(q, mu, tol)
    sq = factor_square(q, mu, tol)
    prod = factor_product(q, mu, tol)
    res = {"rank": report.rank, "square": sq, "product": prod, "failures": [], "inconsistencies": []}

    if inst.shape == "square":
        if report.rank not in (Rank.ZERO, Rank.ONE):
            res["failures"].append(f"square classified as rank {report.rank.value}")
        if sq is None:
            res["failures"].append("factor_square found no root of a generated square")
    elif inst.shape in ("p14", "p15", "p16"):
        if not report.rank.at_most_two():
            res["failures"].append(f"product classified as rank {report.rank.value}")
        if prod is None:
            res["failures"].append("no verified factorization of a generated product")

    # classifier vs constructive factorizer
    if report.rank in (Rank.ZERO, Rank.ONE) and sq is None:
        res["inconsistencies"].append("rank <= 1 by D-functions but no square root constructed")
    if sq is not None and report.rank not in (Rank.ZERO, Rank.ONE):
        res["inconsistencies"].append(f"square constructed but rank {report.rank.value}")
    if report.rank.at_most_two() and prod is None:
        res["inconsistencies"].append(f"rank {report.rank.value} by D-functions but no product constructed")
    if prod is not None and not report.rank.at_most_two():
        res["inconsistencies"].append(f"product constructed but rank {report.rank.value}")

    if grid is not None:
        found = grid_search_factor(q, mu, grid)
        res["grid"] = found
        if found is not None and not report.rank.at_most_two():
            res["failures"].append("grid oracle found a factorization the classifier rejects")

    if cross_backend and not isinstance(q[0, 0], ComplexF):
        fl = murank(q.to_complex(), mu.to_complex(), tol)
        res["complex_rank"] = fl.rank
        if not fl.rank.same_verdict(report.rank):
            res["failures"].append(f"exact rank {report.rank.value} but complex rank {fl.rank.value}")
    return res


def differential_suite(
    trials: int,
    spec: InstanceSpec,
    shapes: Sequence[str] = SHAPES,
    tol=None,
    grid: Sequence | None = None,
    cross_backend: bool = True,
) -> SuiteReport:
    """Generate ``trials`` instances cycling through ``shapes`` and cross-check."""
    out = SuiteReport(trials=trials)
    for t in range(trials):
        shape = shapes[t % len(shapes)]
        seed = trial_seed(spec.seed, t)
        inst = random_instance(spec, shape, random.Random(seed))
        inst.seed = seed
        res = check_instance(inst, tol, grid if spec.backend == "exact" else None, cross_backend)
        out.bump(f"{shape}:rank{res['rank'].value}")
        if res.get("grid") is not None:
            out.bump(f"{shape}:grid_found")
        for msg in res["failures"]:
            out.failures.append({"message": msg, **inst.payload()})
        for msg in res["inconsistencies"]:
            out.inconsistencies.append({"message": msg, **inst.payload()})
    return out
