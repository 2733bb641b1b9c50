"""Text and JSON front end for quadratic forms and mu parameters.

Grammar (whitespace between tokens is ignored)::

    form     := ['-'] term (('+' | '-') term)*
    term     := [rational ['*']] monomial | rational
    monomial := 'z' idx ('^2' | ['*' 'z' idx])
    rational := digits ['/' digits]

Words z_j*z_i with j > i are rewritten to mu_ij z_i*z_j while collecting.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .scalar import from_json, to_json
from .skewring import MuError, MuParams, QuadraticForm, render_form


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<z>z)|(?P<op>[-+*^])|(?P<bad>\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", start, text)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2], self.text)
        self.i += 1
        return tok

    def at(self, kind, value=None) -> bool:
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def index(self) -> int:
        tok = self.take("num")
        if "/" in tok[1]:
            raise ParseError("generator index must be an integer", tok[2], self.text)
        idx = int(tok[1])
        if not 1 <= idx <= self.n:
            raise ParseError(f"generator index z{idx} out of range 1..{self.n}", tok[2], self.text)
        return idx - 1

    def monomial(self) -> tuple[int, int]:
        self.take("z")
        i = self.index()
        if self.at("op", "^"):
            self.take()
            tok = self.take("num")
            if tok[1] != "2":
                raise ParseError("only the exponent 2 is allowed (degree must be 2)", tok[2], self.text)
            return i, i
        if self.at("op", "*") and self.toks[self.i + 1][0] == "z":
            self.take()
            self.take("z")
            return i, self.index()
        raise ParseError("term has degree 1; every term must have degree 2", self.peek()[2], self.text)

    def term(self) -> tuple[Fraction, tuple[int, int]]:
        start = self.peek()[2]
        coeff = Fraction(1)
        if self.at("num"):
            coeff = Fraction(self.take()[1])
            if self.at("op", "*"):
                self.take()
            elif not self.at("z"):
                raise ParseError("constant term has degree 0; every term must have degree 2", start, self.text)
        return coeff, self.monomial()

    def form(self) -> list[tuple[Fraction, tuple[int, int]]]:
        terms = []
        sign = 1
        if self.at("op", "-"):
            self.take()
            sign = -1
        while True:
            c, mono = self.term()
            terms.append((sign * c, mono))
            if self.at("end"):
                return terms
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = 1 if tok[1] == "+" else -1
            else:
                raise ParseError(f"expected '+' or '-', got {tok[1]!r}", tok[2], self.text)


def parse_terms(text: str, n: int) -> list[tuple[Fraction, tuple[int, int]]]:
    """Parse into raw (coefficient, (i, j)) words, 0-based and unordered."""
    if not text.strip():
        raise ParseError("empty form", 0, text)
    return _Parser(text, n).form()


def parse_form(text: str, n: int, mu: MuParams) -> QuadraticForm:
    if mu.n != n:
        raise ParseError(f"mu has n={mu.n} but the form was requested with n={n}")
    coeffs: dict[tuple[int, int], Any] = {}
    for c, (i, j) in parse_terms(text, n):
        if i > j:
            c = c * mu[j, i]
            i, j = j, i
        coeffs[i, j] = coeffs.get((i, j), Fraction(0)) + c
    return QuadraticForm(n, coeffs)


def render(q: QuadraticForm) -> str:
    return render_form(q)


_MU_ITEM = re.compile(r"^\s*mu\s*(\d)\s*,?\s*(\d)\s*=\s*(\S+)\s*$")


def parse_mu(source: str | list | dict | None, n: int) -> MuParams:
    """Accept "mu12=2, mu13=1/2, ...", a JSON string, or a full matrix.

    Missing pairs default to 1; the lower triangle is always the reciprocal.
    Full matrices are validated rather than repaired.
    """
    if source is None:
        return MuParams.ones(n)
    if isinstance(source, str):
        text = source.strip()
        if not text:
            return MuParams.ones(n)
        if text[0] in "[{":
            try:
                source = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON for mu: {exc.msg}", exc.pos, text) from exc
        else:
            return _parse_mu_pairs(text, n)
    if isinstance(source, dict):
        return _mu_from_pairs({k: v for k, v in source.items()}, n)
    if isinstance(source, list):
        return _parse_mu_matrix(source, n)
    raise ParseError(f"unsupported mu specification {source!r}")


def _parse_mu_pairs(text: str, n: int) -> MuParams:
    items = {}
    for part in text.split(","):
        if not part.strip():
            continue
        m = _MU_ITEM.match(part)
        if not m:
            raise ParseError(f"bad mu entry {part.strip()!r}; expected e.g. mu12=2")
        items[f"{m.group(1)}{m.group(2)}"] = m.group(3)
    return _mu_from_pairs(items, n)


def _mu_from_pairs(items: dict, n: int) -> MuParams:
    upper = {}
    for key, raw in items.items():
        key = str(key).removeprefix("mu")
        if len(key) != 2 or not key.isdigit():
            raise ParseError(f"bad mu key {key!r}")
        i, j = int(key[0]) - 1, int(key[1]) - 1
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"mu{key} out of range for n={n}")
        try:
            v = from_json(raw)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        if v == 0:
            raise MuError(f"mu{key} must be nonzero")
        if i == j:
            if v != 1:
                raise MuError(f"mu{key} must be 1")
            continue
        if i > j:
            i, j, v = j, i, 1 / v
        if (i, j) in upper and upper[i, j] != v:
            raise MuError(f"mu{i + 1}{j + 1} given inconsistently")
        upper[i, j] = v
    return MuParams.from_upper(n, upper)


def _parse_mu_matrix(rows: list, n: int) -> MuParams:
    if len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f"mu matrix must be {n}x{n}")
    try:
        entries = tuple(tuple(from_json(x) for x in row) for row in rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return MuParams(entries).validate()


def mu_to_json(mu: MuParams) -> list:
    return [[to_json(x) for x in row] for row in mu.entries]


def form_to_json(q: QuadraticForm) -> dict:
    return {f"{i + 1}{j + 1}": to_json(v) for (i, j), v in q.items()}


def form_from_json(obj: dict, n: int) -> QuadraticForm:
    """Inverse of :func:`form_to_json`: keys "ij" hold normal-form coefficients."""
    coeffs = {}
    for key, raw in obj.items():
        if len(key) != 2 or not key.isdigit():
            raise ParseError(f"bad coefficient key {key!r}")
        i, j = int(key[0]) - 1, int(key[1]) - 1
        if not (0 <= i <= j < n):
            raise ParseError(f"coefficient key {key!r} is not normal-ordered for n={n}")
        coeffs[i, j] = from_json(raw)
    return QuadraticForm(n, coeffs)
