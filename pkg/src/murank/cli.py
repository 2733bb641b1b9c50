"""Command-line entry point: ``murank <command> [options]``.

Exit codes: 0 success, 1 parse/validation error (or a failed ``verify``),
2 mu-invariant violation, 3 classifier/factorizer inconsistency, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from . import scalar
from .factor import Factorization, InternalInconsistency, factor, verify_factorization
from .musym import MuSymmetryError, form_from_matrix, matrix_from_upper
from .oracle import InstanceSpec, differential_suite
from .parser import ParseError, form_from_json, form_to_json, mu_to_json, parse_form, parse_mu
from .rankcore import all_d_values, murank
from .skewring import LinearForm, MuError, MuParams, QuadraticForm, multiply_linear, render_form

EXIT_OK, EXIT_INVALID, EXIT_MU, EXIT_INCONSISTENT, EXIT_IO = 0, 1, 2, 3, 4


@dataclass
class CliConfig:
    command: str
    backend: str = "exact"
    n: int | None = None
    mu: str | None = None
    form: str | None = None
    file: str | None = None
    tol: float = scalar.DEFAULT_TOL
    seed: int = 0
    trials: int = 100
    json: bool = False
    left: str | None = None
    right: str | None = None
    factors: str | None = None


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def _load_file(cfg: CliConfig) -> dict:
    if not cfg.file:
        return {}
    text = _read_text(cfg.file)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON input: {exc.msg}", exc.pos) from exc
    if not isinstance(data, dict):
        raise ParseError("JSON input must be an object")
    return data


def _problem(cfg: CliConfig) -> tuple[QuadraticForm, MuParams, dict]:
    data = _load_file(cfg)
    n = cfg.n or data.get("n") or 4
    if n not in (3, 4):
        raise ParseError(f"n must be 3 or 4, got {n}")
    mu = parse_mu(cfg.mu if cfg.mu is not None else data.get("mu"), n)
    mu.validate()
    form = cfg.form
    if form == "-":
        form = sys.stdin.read()
    if form is not None:
        q = parse_form(form, n, mu)
    elif isinstance(data.get("form"), str):
        q = parse_form(data["form"], n, mu)
    elif isinstance(data.get("form"), dict):
        q = form_from_json(data["form"], n)
    elif isinstance(data.get("a"), dict):
        a = {}
        for key, raw in data["a"].items():
            i, j = int(key[0]) - 1, int(key[1]) - 1
            a[i, j] = scalar.from_json(raw)
        q = form_from_matrix(matrix_from_upper(a, mu))
    else:
        raise ParseError("no quadratic form given (use --form, or --file with 'form' or 'a')")
    if cfg.backend == "complex":
        q, mu = q.to_complex(), mu.to_complex()
    return q, mu, data


def _parse_linear(text: str, n: int, backend: str) -> LinearForm:
    text = text.strip()
    items = json.loads(text) if text.startswith("[") else text.split(",")
    if len(items) != n:
        raise ParseError(f"linear form needs {n} coefficients, got {len(items)}")
    coeffs = [scalar.from_json(x if not isinstance(x, str) else x.strip()) for x in items]
    lf = LinearForm(coeffs)
    return lf.map(scalar.to_complexf) if backend == "complex" else lf


def _factorization_from_json(obj: dict, n: int, backend: str) -> Factorization:
    try:
        factors = tuple(_parse_linear(json.dumps(f), n, backend) for f in obj["factors"])
        pre = scalar.from_json(obj.get("prefactor", "1"))
        return Factorization(obj["kind"], factors, pre, obj.get("provenance", ""))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad factorization JSON: {exc}") from exc


def _cross_check(q, mu, report, fac, tol):
    rank_low = report.rank.at_most_two()
    if rank_low != (fac is not None):
        raise InternalInconsistency(
            f"classifier says rank {report.rank.value} but the factorizer "
            + ("found " + str(fac) if fac is not None else "found no factorization"),
            {"n": q.n, "mu": mu_to_json(mu), "form": form_to_json(q)},
        )


def _emit(cfg: CliConfig, payload: dict, human: str):
    if cfg.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(human)


def cmd_classify(cfg: CliConfig) -> int:
    q, mu, _ = _problem(cfg)
    report = murank(q, mu, cfg.tol)
    fac = factor(q, mu, cfg.tol)
    payload = report.to_json()
    payload["form"] = render_form(q, cfg.tol)
    lines = [f"mu-rank: {report.rank.value}"]
    if report.normalized:
        lines.append("(form rescaled so that a11 = 1)")
    for k, v in sorted(report.d_values.items()):
        lines.append(f"D{k} = {v}")
    if report.witness_signs:
        lines.append(f"root signs (X, Y, Z): {report.witness_signs}")
    _emit(cfg, payload, "\n".join(lines))
    _cross_check(q, mu, report, fac, cfg.tol)
    return EXIT_OK


def cmd_factor(cfg: CliConfig) -> int:
    q, mu, _ = _problem(cfg)
    fac = factor(q, mu, cfg.tol)
    payload = {
        "n": q.n,
        "mu": mu_to_json(mu),
        "form": form_to_json(q),
        "factorization": fac.to_json() if fac else None,
    }
    _emit(cfg, payload, str(fac) if fac else "none")
    _cross_check(q, mu, murank(q, mu, cfg.tol), fac, cfg.tol)
    return EXIT_OK


def cmd_minors(cfg: CliConfig) -> int:
    q, mu, _ = _problem(cfg)
    res = all_d_values(q, mu, cfg.tol)
    d = res["d_values"]
    payload = {"n": q.n, "d_values": {str(k): scalar.to_json(v) for k, v in sorted(d.items())}}
    payload["signs"] = list(res["signs"]) if res["signs"] else None
    _emit(cfg, payload, "\n".join(f"D{k} = {v}" for k, v in sorted(d.items())))
    return EXIT_OK


def cmd_expand(cfg: CliConfig) -> int:
    data = _load_file(cfg)
    n = cfg.n or data.get("n") or 4
    mu = parse_mu(cfg.mu if cfg.mu is not None else data.get("mu"), n).validate()
    if cfg.left is None or cfg.right is None:
        raise ParseError("expand needs --left and --right")
    l1 = _parse_linear(cfg.left, n, cfg.backend)
    l2 = _parse_linear(cfg.right, n, cfg.backend)
    if cfg.backend == "complex":
        mu = mu.to_complex()
    q = multiply_linear(l1, l2, mu)
    payload = {"n": n, "mu": mu_to_json(mu), "form": form_to_json(q), "text": render_form(q, cfg.tol)}
    _emit(cfg, payload, render_form(q, cfg.tol))
    return EXIT_OK


def cmd_verify(cfg: CliConfig) -> int:
    q, mu, data = _problem(cfg)
    if cfg.factors is not None:
        obj = json.loads(_read_text(cfg.factors) if not cfg.factors.lstrip().startswith("{") else cfg.factors)
    else:
        obj = data.get("factorization")
    if obj is None:
        raise ParseError("verify needs a factorization (--factors or a 'factorization' entry in --file)")
    f = _factorization_from_json(obj, q.n, cfg.backend)
    ok = verify_factorization(q, f, mu, cfg.tol)
    _emit(cfg, {"verified": ok}, "true" if ok else "false")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_fuzz(cfg: CliConfig) -> int:
    n = cfg.n or 4
    spec = InstanceSpec(n=n, backend=cfg.backend, seed=cfg.seed)
    report = differential_suite(cfg.trials, spec, tol=cfg.tol)
    payload = report.to_json()
    human = [f"trials: {report.trials}"]
    human += [f"  {k}: {v}" for k, v in sorted(report.counts.items())]
    human.append(f"failures: {len(report.failures)}")
    human.append(f"inconsistencies: {len(report.inconsistencies)}")
    for item in report.failures + report.inconsistencies:
        human.append("  " + json.dumps(item, sort_keys=True))
    _emit(cfg, payload, "\n".join(human))
    return EXIT_OK if report.ok else EXIT_INCONSISTENT


COMMANDS = {
    "classify": cmd_classify,
    "factor": cmd_factor,
    "minors": cmd_minors,
    "expand": cmd_expand,
    "verify": cmd_verify,
    "fuzz": cmd_fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, choices=(3, 4), help="number of generators (default 4)")
    common.add_argument("--mu", help='"mu12=2,mu13=1/2,..." or a JSON matrix; missing pairs default to 1')
    common.add_argument("--form", help='quadratic form, e.g. "z1^2 + 4z1*z2"; "-" reads stdin')
    common.add_argument("--file", help="JSON input with n, mu and form (or a) entries; '-' reads stdin")
    common.add_argument("--backend", choices=("exact", "complex"), default="exact")
    common.add_argument("--tol", type=float, default=scalar.DEFAULT_TOL, help="relative tolerance (complex backend)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="murank", description="mu-rank of noncommutative quadratic forms")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="mu-rank with D-values")
    sub.add_parser("factor", parents=[common], help="explicit L^2 or L1 L2 factorization")
    sub.add_parser("minors", parents=[common], help="table of every D-function")
    ex = sub.add_parser("expand", parents=[common], help="normal-ordered product of two linear forms")
    ex.add_argument("--left", help='coefficients "1,1,1,1" or JSON list')
    ex.add_argument("--right", help='coefficients "1,2,2,2" or JSON list')
    ve = sub.add_parser("verify", parents=[common], help="check a factorization against a form")
    ve.add_argument("--factors", help="factorization JSON (inline or a path); defaults to --file's entry")
    fz = sub.add_parser("fuzz", parents=[common], help="differential suite against generated instances")
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--trials", type=int, default=100)
    return p


def run(cfg: CliConfig) -> int:
    scalar_tol = cfg.tol
    if scalar_tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INVALID
    try:
        return COMMANDS[cfg.command](cfg)
    except (MuError, MuSymmetryError) as exc:
        print(f"mu error: {exc}", file=sys.stderr)
        return EXIT_MU
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        print(json.dumps(exc.payload, sort_keys=True), file=sys.stderr)
        return EXIT_INCONSISTENT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(**{k: v for k, v in vars(args).items() if k in CliConfig.__dataclass_fields__})
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
