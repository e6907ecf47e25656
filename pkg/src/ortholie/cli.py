"""Command-line interface.

    ortholie eval --family hermite --n 3 --grid=-4:4:9 --derivative
    ortholie transform analyze --family laguerre --input samples.csv --n-max 20 --output c.json
    ortholie transform synthesize --input c.json --grid 0:30:301 --output back.csv
    ortholie coherent --family laguerre --alpha-re 0.5 --grid 0:0:1
    ortholie quadrature --family legendre --quad-size 1
    ortholie verify --format csv

Exit status: 0 on success, 1 for invalid input, 2 when a verification check fails.
Grids whose first entry is negative must be written ``--grid=-1:1:21``.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import io as tio
from .coherent import DEFAULT_TAIL, CoherentParameter, coherent_coefficients, coherent_eval, default_n_max, tail_bound
from .families import GridSamples, basis_derivative_table, basis_table, get_family
from .quadrature import gauss_rule
from .transform import analyze_samples, synthesize
from .verification import SUITES, Check, run_suite

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    """Invalid command-line input; the message names the offending field."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def parse_grid(spec: str, family) -> np.ndarray:
    """'a:b:count' -> count equally spaced points from a to b inclusive."""
    family = get_family(family)
    try:
        a, b, count = spec.split(":")
        a, b, count = float(a), float(b), int(count)
    except ValueError:
        raise UsageError(f"--grid: expected 'a:b:count', got {spec!r}") from None
    if count < 1:
        raise UsageError("--grid: count must be at least 1")
    if not (math.isfinite(a) and math.isfinite(b)):
        raise UsageError("--grid: endpoints must be finite")
    if count > 1 and not a < b:
        raise UsageError("--grid: need a < b when count > 1")
    points = np.linspace(a, b, count)
    if not np.all(family.contains(points)):
        raise UsageError(f"--grid: points must lie in the {family.name} interval {family.interval}")
    return points


def _family(args):
    if args.family is None:
        raise UsageError("--family: required (hermite, laguerre or legendre)")
    try:
        return get_family(args.family)
    except ValueError as exc:
        raise UsageError(f"--family: {exc}") from None


def _nonneg(value, flag):
    if value is None:
        raise UsageError(f"{flag}: required")
    if value < 0:
        raise UsageError(f"{flag}: must be non-negative, got {value}")
    return value


def _quad_size(args):
    if args.quad_size is not None and args.quad_size < 1:
        raise UsageError(f"--quad-size: must be positive, got {args.quad_size}")
    return args.quad_size


def _read(path: str | None, flag="--input") -> str:
    if path is None:
        raise UsageError(f"{flag}: required")
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {path}: {exc.strerror}") from None


def cmd_eval(args) -> tuple[str, int]:
    family = _family(args)
    n = _nonneg(args.n, "--n")
    if args.grid is None:
        raise UsageError("--grid: required")
    x = parse_grid(args.grid, family)
    values = basis_table(family, n, x)[n]
    deriv = basis_derivative_table(family, n, x)[n] if args.derivative else None
    if args.format == "json":
        doc = {"family": family.name, "n": n, "points": list(x), "values": list(values)}
        if deriv is not None:
            doc["derivatives"] = list(deriv)
        return tio.dumps_json(doc), EXIT_OK
    header = "x,value,derivative" if deriv is not None else "x,value"
    rows = [header]
    for i, t in enumerate(x):
        cols = [tio.fmt(t), tio.fmt(values[i])] + ([tio.fmt(deriv[i])] if deriv is not None else [])
        rows.append(",".join(cols))
    return "\n".join(rows) + "\n", EXIT_OK


def cmd_transform(args) -> tuple[str, int]:
    if args.direction == "analyze":
        family = _family(args)
        n_max = _nonneg(args.n_max, "--n-max")
        try:
            samples = tio.grid_from_csv(_read(args.input), family)
            coeffs = analyze_samples(samples, n_max, _quad_size(args))
        except ValueError as exc:
            raise UsageError(f"--input: {exc}") from None
        return tio.coefficients_to_json(coeffs), EXIT_OK

    try:
        coeffs = tio.coefficients_from_json(_read(args.input))
    except ValueError as exc:
        raise UsageError(f"--input: {exc}") from None
    if args.family is not None and _family(args) != coeffs.family:
        raise UsageError(f"--family: input coefficients belong to {coeffs.family.name}")
    if args.grid is None:
        raise UsageError("--grid: required")
    samples = synthesize(coeffs, parse_grid(args.grid, coeffs.family))
    if args.format == "json":
        doc = {"family": samples.family.name, "samples": [[x, v.real, v.imag] for x, v in zip(samples.points, samples.values)]}
        return tio.dumps_json(doc), EXIT_OK
    return tio.grid_to_csv(samples), EXIT_OK


def coherent_parameter(args, family) -> CoherentParameter:
    z_given = args.z_re is not None or args.z_im is not None
    alpha_given = args.alpha_re is not None or args.alpha_im is not None
    hyper_given = args.xi is not None or args.theta is not None
    if family.algebra == "h1":
        if alpha_given or hyper_given:
            raise UsageError("--alpha-re/--alpha-im/--xi/--theta: hermite takes --z-re/--z-im")
        return CoherentParameter.h1(complex(args.z_re or 0.0, args.z_im or 0.0))
    if z_given:
        raise UsageError(f"--z-re/--z-im: {family.name} takes --alpha-re/--alpha-im or --xi/--theta")
    if alpha_given and hyper_given:
        raise UsageError("--xi/--theta: give either alpha or hyperboloid coordinates, not both")
    try:
        if hyper_given:
            if args.xi is None or args.theta is None:
                raise UsageError("--xi/--theta: both are required")
            return CoherentParameter.from_hyperboloid(args.xi, args.theta)
        return CoherentParameter.su11(complex(args.alpha_re or 0.0, args.alpha_im or 0.0))
    except ValueError as exc:
        flag = "--xi" if hyper_given else "--alpha-re/--alpha-im"
        raise UsageError(f"{flag}: {exc}") from None


def cmd_coherent(args) -> tuple[str, int]:
    family = _family(args)
    p = coherent_parameter(args, family)
    tol = DEFAULT_TAIL if args.tolerance is None else args.tolerance
    if not 0.0 < tol < 1.0:
        raise UsageError(f"--tolerance: must lie in (0, 1), got {tol}")
    n_max = default_n_max(p, tol) if args.n_max is None else _nonneg(args.n_max, "--n-max")
    coeffs = coherent_coefficients(family, p, n_max)
    x = parse_grid(args.grid, family) if args.grid is not None else np.zeros(0)
    values = [coherent_eval(family, p, t, n_max) for t in x]
    if args.format == "csv":
        if args.grid is None:
            rows = ["n,re,im"] + [f"{n},{tio.fmt(c.real)},{tio.fmt(c.imag)}" for n, c in enumerate(coeffs.coeffs)]
        else:
            rows = ["x,re,im"] + [f"{tio.fmt(t)},{tio.fmt(v.real)},{tio.fmt(v.imag)}" for t, v in zip(x, values)]
        return "\n".join(rows) + "\n", EXIT_OK
    doc = {
        "family": family.name,
        "parameter": p.to_dict(),
        "n_max": n_max,
        "tail_bound": tail_bound(p, n_max),
        "coeffs": [[c.real, c.imag] for c in coeffs.coeffs],
    }
    if args.grid is not None:
        doc["values"] = [[t, v.real, v.imag] for t, v in zip(x, values)]
    return tio.dumps_json(doc), EXIT_OK


def cmd_quadrature(args) -> tuple[str, int]:
    family = _family(args)
    m = _quad_size(args)
    if m is None:
        raise UsageError("--quad-size: required")
    rule = gauss_rule(family, m)
    if args.format == "json":
        return tio.quadrature_to_json(rule), EXIT_OK
    return tio.quadrature_to_csv(rule), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    n_max = 50 if args.n_max is None else args.n_max
    if n_max < 2:
        raise UsageError(f"--n-max: verification needs at least 2, got {n_max}")
    if args.tolerance is not None and not args.tolerance > 0:
        raise UsageError(f"--tolerance: must be positive, got {args.tolerance}")
    suites = args.suite or list(SUITES)
    checks = [c for name in suites for c in run_suite(name, seed=0, n_max=n_max)]
    if args.tolerance is not None:
        checks = [Check(c.name, c.residual, args.tolerance) for c in checks]
    ok = all(c.passed for c in checks)
    if args.format == "csv":
        rows = ["name,residual,threshold,passed"]
        rows += [f"{c.name},{tio.fmt(c.residual)},{tio.fmt(c.threshold)},{str(c.passed).lower()}" for c in checks]
        text = "\n".join(rows) + "\n"
    else:
        doc = {
            "passed": ok,
            "n_checks": len(checks),
            "n_failed": sum(not c.passed for c in checks),
            "checks": [{"name": c.name, "residual": c.residual, "threshold": c.threshold, "passed": c.passed} for c in checks],
        }
        text = tio.dumps_json(doc)
    return text, EXIT_OK if ok else EXIT_FAILED


COMMANDS = {
    "eval": cmd_eval,
    "transform": cmd_transform,
    "coherent": cmd_coherent,
    "quadrature": cmd_quadrature,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help="hermite, laguerre or legendre")
    common.add_argument("--output", help="write to PATH instead of standard output")

    parser = _Parser(prog="ortholie", description="Hermite, Laguerre and Legendre bases, ladder algebras and coherent states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="tabulate phi_n on a grid")
    p.add_argument("--n", type=int)
    p.add_argument("--grid", help="a:b:count")
    p.add_argument("--derivative", action="store_true", help="also emit phi_n'")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("transform", parents=[common], help="analyze samples or synthesize coefficients")
    p.add_argument("direction", choices=["analyze", "synthesize"])
    p.add_argument("--input", help="x,re,im CSV (analyze) or coefficient JSON (synthesize)")
    p.add_argument("--n-max", type=int)
    p.add_argument("--quad-size", type=int)
    p.add_argument("--grid", help="a:b:count (synthesize)")
    p.add_argument("--format", choices=["csv", "json"], default=None)

    p = sub.add_parser("coherent", parents=[common], help="coherent-state coefficients and values")
    for flag in ("--alpha-re", "--alpha-im", "--xi", "--theta", "--z-re", "--z-im", "--tolerance"):
        p.add_argument(flag, type=float)
    p.add_argument("--n-max", type=int)
    p.add_argument("--grid", help="a:b:count")
    p.add_argument("--format", choices=["csv", "json"], default="json")

    p = sub.add_parser("quadrature", parents=[common], help="Gauss nodes and weights")
    p.add_argument("--quad-size", type=int)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--n-max", type=int, help="algebra truncation for commutator/Casimir checks (default 50)")
    p.add_argument("--tolerance", type=float, help="replace every threshold by this value")
    p.add_argument("--suite", action="append", choices=list(SUITES))
    p.add_argument("--format", choices=["csv", "json"], default="json")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "transform" and args.format is None:
        args.format = "json" if args.direction == "analyze" else "csv"
    try:
        text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ortholie {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            print(f"ortholie {args.command}: error: --output: {exc.strerror}", file=sys.stderr)
            return EXIT_INVALID
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
