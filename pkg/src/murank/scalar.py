"""Scalar backends.

Two kinds of scalars flow through the library:

* exact: :class:`fractions.Fraction`, promoted to :class:`QuadExt` as soon as a
  square root without a rational value is needed;
* float: :class:`ComplexF`, a complex double that tracks the magnitude of the
  largest monomial that went into it, so zero tests can be relative.

Every other module is written against plain operators (``+ - * /``) and the
helpers here (:func:`is_zero`, :func:`sqrt_candidates`, ...), so the same
formula code runs on either backend.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Union

import sympy

DEFAULT_TOL = 1e-9

# symbol for sqrt(-1); every other symbol is a prime p standing for sqrt(p)
IMAG = -1


class UnsupportedOperation(ArithmeticError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def _symbol_name(s: int) -> str:
    return "I" if s == IMAG else f"sqrt({s})"


def _parse_symbol(name: str) -> int:
    name = name.strip()
    if name == "I":
        return IMAG
    if name.startswith("sqrt(") and name.endswith(")"):
        return int(name[5:-1])
    raise ValueError(f"unknown extension symbol {name!r}")


def _monomial_key(mono: frozenset) -> tuple:
    return (len(mono), sorted(mono))


def _mono_mul(m1: frozenset, m2: frozenset) -> tuple[int, frozenset]:
    factor = 1
    for s in m1 & m2:
        factor *= s
    return factor, m1 ^ m2


class QuadExt:
    """Element of Q(sqrt(-1), sqrt(2), sqrt(3), sqrt(5), ...).

    Stored on the canonical multilinear basis: each key of ``coords`` is a set
    of symbols (``-1`` for sqrt(-1), a prime ``p`` for sqrt(p)) and maps to a
    nonzero rational coefficient.  Because the generators are square roots of
    distinct primes and -1, this basis is linearly independent, so an element
    is zero exactly when it has no coords.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping[frozenset, Fraction] | None = None):
        clean = {}
        for mono, c in (coords or {}).items():
            c = _frac(c)
            if c:
                clean[frozenset(mono)] = c
        self.coords: dict[frozenset, Fraction] = clean

    @classmethod
    def rational(cls, x) -> "QuadExt":
        return cls({frozenset(): _frac(x)})

    @classmethod
    def symbol(cls, s: int) -> "QuadExt":
        return cls({frozenset([s]): Fraction(1)})

    # -- structure ------------------------------------------------------
    @property
    def squares(self) -> tuple[int, ...]:
        """Adjoined symbols in use; each symbol's square is its own value."""
        syms = set()
        for mono in self.coords:
            syms |= mono
        return tuple(sorted(syms))

    def is_rational(self) -> bool:
        return all(not mono for mono in self.coords)

    def rational_part(self) -> Fraction:
        return self.coords.get(frozenset(), Fraction(0))

    def simplify(self):
        """Return a plain Fraction when no symbol survives."""
        return self.rational_part() if self.is_rational() else self

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _lift(x) -> "QuadExt | None":
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadExt.rational(x)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.coords)
        for mono, c in o.coords.items():
            out[mono] = out.get(mono, 0) + c
        return QuadExt(out)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt({m: -c for m, c in self.coords.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict[frozenset, Fraction] = {}
        for m1, c1 in self.coords.items():
            for m2, c2 in o.coords.items():
                f, m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + f * c1 * c2
        return QuadExt(out)

    __rmul__ = __mul__

    def conjugates(self) -> list["QuadExt"]:
        """Images under every nonidentity sign-flip automorphism."""
        syms = self.squares
        out = []
        for r in range(1, len(syms) + 1):
            for flip in combinations(syms, r):
                e = self
                for s in flip:
                    e = sign_flip(e, s)
                out.append(e)
        return out

    def inverse(self) -> "QuadExt":
        if not self.coords:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return QuadExt.rational(1 / self.rational_part())
        # x * prod(conjugates) is the norm, a nonzero rational
        others = QuadExt.rational(1)
        for c in self.conjugates():
            others = others * c
        norm = self * others
        if not norm.is_rational():
            raise UnsupportedOperation("norm did not reduce to a rational")
        return others * (1 / norm.rational_part())

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QuadExt.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __bool__(self):
        return bool(self.coords)

    # -- conversion -----------------------------------------------------
    def to_complex(self) -> complex:
        total = 0j
        for mono, c in self.coords.items():
            v = complex(float(c))
            for s in mono:
                v *= 1j if s == IMAG else math.sqrt(s)
            total += v
        return total

    def __complex__(self):
        return self.to_complex()

    def __str__(self):
        if not self.coords:
            return "0"
        parts = []
        for mono in sorted(self.coords, key=_monomial_key):
            c = self.coords[mono]
            name = "*".join(_symbol_name(s) for s in sorted(mono))
            if not name:
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        return "(" + " + ".join(parts).replace("+ -", "- ") + ")"

    def __repr__(self):
        return f"QuadExt({self})"


def sign_flip(e, symbol: int):
    """Apply the automorphism negating one adjoined symbol."""
    if isinstance(e, (int, Fraction)):
        return e
    if symbol not in e.squares:
        raise KeyError(f"symbol {_symbol_name(symbol)} not adjoined")
    return QuadExt({m: (-c if symbol in m else c) for m, c in e.coords.items()})


class ComplexF:
    """Complex double carrying the magnitude scale of its own evaluation.

    ``scale`` bounds the largest monomial that contributed to the value: leaves
    start at ``abs(value)``, sums take the max, products multiply.  Zero tests
    compare against ``tol * max(1, scale)``.
    """

    __slots__ = ("value", "scale")

    def __init__(self, value, scale: float | None = None):
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ArithmeticError(f"non-finite complex value {value!r}")
        self.value = value
        self.scale = abs(value) if scale is None else float(scale)

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag

    @staticmethod
    def _lift(x) -> "ComplexF | None":
        if isinstance(x, ComplexF):
            return x
        if isinstance(x, (int, Fraction, float, complex)):
            return ComplexF(complex(x))
        if isinstance(x, QuadExt):
            return ComplexF(x.to_complex())
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        v = self.value + o.value
        return ComplexF(v, max(self.scale, o.scale, abs(v)))

    __radd__ = __add__

    def __neg__(self):
        return ComplexF(-self.value, self.scale)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexF(self.value * o.value, self.scale * o.scale)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.value == 0:
            raise ZeroDivisionError("complex division by zero")
        return ComplexF(self.value / o.value, self.scale / abs(o.value))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        return ComplexF(self.value**k, self.scale**k)

    def __complex__(self):
        return self.value

    def __repr__(self):
        return f"ComplexF({self.value!r}, scale={self.scale:.3g})"

    def __str__(self):
        return f"({self.re:.12g}{self.im:+.12g}j)"


Scalar = Union[int, Fraction, QuadExt, ComplexF]


def is_zero(x, tol: float | None = None) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    if isinstance(x, QuadExt):
        return not x.coords
    if isinstance(x, ComplexF):
        tol = DEFAULT_TOL if tol is None else tol
        return abs(x.value) <= tol * max(1.0, x.scale)
    raise TypeError(f"unsupported scalar {x!r}")


def is_one(x, tol: float | None = None) -> bool:
    return is_zero(x - 1, tol)


def all_zero(xs: Iterable, tol: float | None = None) -> bool:
    return all(is_zero(x, tol) for x in xs)


def inv(x):
    if isinstance(x, (int, Fraction)):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)
    if isinstance(x, QuadExt):
        return x.inverse().simplify()
    if isinstance(x, ComplexF):
        return 1 / x
    raise TypeError(f"unsupported scalar {x!r}")


def is_complex_backend(x) -> bool:
    return isinstance(x, ComplexF)


def to_complexf(x) -> ComplexF:
    if isinstance(x, ComplexF):
        return x
    if isinstance(x, QuadExt):
        return ComplexF(x.to_complex())
    return ComplexF(complex(x))


# -- square roots ----------------------------------------------------------


def _isqrt_exact(k: int) -> int | None:
    if k < 0:
        return None
    r = math.isqrt(k)
    return r if r * r == k else None


@lru_cache(maxsize=4096)
def _squarefree_split(k: int) -> tuple[int, tuple[int, ...]]:
    """Write k > 0 as m**2 * prod(primes)."""
    m = 1
    primes = []
    for p, e in sympy.factorint(k).items():
        m *= p ** (e // 2)
        if e % 2:
            primes.append(p)
    return m, tuple(sorted(primes))


def rational_sqrt(s: Fraction):
    """Principal square root of a rational, exact in the extension."""
    s = _frac(s)
    if s == 0:
        return Fraction(0)
    num, den = s.numerator, s.denominator
    rn, rd = _isqrt_exact(abs(num)), _isqrt_exact(den)
    if rn is not None and rd is not None:
        r = Fraction(rn, rd)
        return r if num > 0 else QuadExt({frozenset([IMAG]): r})
    # sqrt(p/q) = sqrt(p*q)/q
    m, primes = _squarefree_split(abs(num) * den)
    mono = set(primes)
    if num < 0:
        mono.add(IMAG)
    return QuadExt({frozenset(mono): Fraction(m, den)})


def sqrt_candidates(s, tol: float | None = None) -> list:
    """Both square roots of ``s`` (a single ``0`` when ``s`` vanishes)."""
    if isinstance(s, QuadExt):
        if not s.is_rational():
            raise UnsupportedOperation("square roots of irrational extension elements are not supported")
        s = s.rational_part()
    if isinstance(s, (int, Fraction)):
        if s == 0:
            return [Fraction(0)]
        r = rational_sqrt(s)
        return [r, -r]
    if isinstance(s, ComplexF):
        scale = math.sqrt(s.scale)
        if is_zero(s, tol):
            return [ComplexF(0, scale)]
        r = cmath.sqrt(s.value)
        return [ComplexF(r, scale), ComplexF(-r, scale)]
    raise TypeError(f"unsupported scalar {s!r}")


def principal_sqrt(s, tol: float | None = None):
    return sqrt_candidates(s, tol)[0]


# -- serialization ---------------------------------------------------------


def to_json(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, ComplexF):
        return [x.re, x.im]
    if isinstance(x, QuadExt):
        if x.is_rational():
            return str(x.rational_part())
        return {
            "squares": {_symbol_name(s): str(s) for s in x.squares},
            "coords": {
                ("*".join(_symbol_name(s) for s in sorted(m)) or "1"): str(c)
                for m, c in sorted(x.coords.items(), key=lambda kv: _monomial_key(kv[0]))
            },
        }
    raise TypeError(f"unsupported scalar {x!r}")


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError("bool is not a rational")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise ValueError("floats are not exact rationals; use 'p/q' strings")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc


def from_json(obj):
    if isinstance(obj, list):
        if len(obj) != 2:
            raise ValueError("complex scalars serialize as [re, im]")
        return ComplexF(complex(float(obj[0]), float(obj[1])))
    if isinstance(obj, dict):
        squares = {_parse_symbol(k): parse_rational(v) for k, v in obj.get("squares", {}).items()}
        for s, v in squares.items():
            if v != s:
                raise ValueError(f"symbol {_symbol_name(s)} must square to {s}, got {v}")
        coords = {}
        for key, c in obj["coords"].items():
            mono = frozenset() if key in ("", "1") else frozenset(_parse_symbol(t) for t in key.split("*"))
            coords[mono] = parse_rational(c)
        return QuadExt(coords).simplify()
    return parse_rational(obj)


def render(x) -> str:
    if isinstance(x, ComplexF):
        return str(x)
    return str(x)
