"""Command-line front end.

Exit codes: 0 ok, 2 numerical failure (oracle or finite part did not reach
tolerance, or a closed form disagreed with the oracle above threshold),
3 lambda not above the validity threshold while enforcing it, 4 bad
arguments.
"""

import argparse
from concurrent.futures import ThreadPoolExecutor
import csv
from dataclasses import dataclass
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .errors import BelowThreshold, NumericalFailure, SincKitError
from .expansion import (
    MAX_N,
    build_expansion,
    coefficient_table,
    evaluate_expansion,
    finite_part_weight,
    inner_sum_even,
    inner_sum_odd,
    outer_factor,
    prefactor_C,
    prefactor_D,
    split_n,
    Parity,
)
from .finite_part import DEFAULT_TOL as FP_TOL, finite_part_integral, finite_part_paper_example_closed_form
from .functions import REGISTRY, Kind, make_builtin
from .quadrature import sinc_transform_integrand, sinc_transform_oracle

EXIT_OK = 0
EXIT_NUMERICAL = 2
EXIT_THRESHOLD = 3
EXIT_USAGE = 4

SCAN_FIELDS = ["lambda", "closed_form", "oracle", "abs_diff", "above_threshold"]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunSpec:
    function: str
    tau: float
    sigma: float
    n: int
    lam: float = None
    lambda_range: tuple = None  # (min, max, count)
    tol: float = 1e-8
    format: str = "json"
    enforce_threshold: bool = True
    split_point: float = 1.0

    def __post_init__(self):
        if self.function not in REGISTRY:
            raise UsageError(f"unknown function {self.function!r}; choose from {', '.join(sorted(REGISTRY))}")
        if self.lambda_range is not None:
            lo, hi, count = self.lambda_range
            if not lo < hi or count < 2:
                raise UsageError("lambda range needs --lambda-min < --lambda-max and --points >= 2")
        if not self.tol > 0:
            raise UsageError("--tol must be > 0")

    def make_function(self):
        return make_builtin(self.function, tau=self.tau, sigma=self.sigma)

    def lambdas(self):
        lo, hi, count = self.lambda_range
        return [float(v) for v in np.linspace(lo, hi, count)]


def fmt(v):
    """17 significant digits: enough for an exact float round trip."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def fraction_str(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def write_rows(rows, fields, out_format, stream, extra=None):
    if out_format == "csv":
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(fields)
        for row in rows:
            w.writerow([fmt(row.get(k, "")) for k in fields])
    else:
        doc = dict(extra or {})
        doc["rows"] = rows
        json.dump(doc, stream, indent=2)
        stream.write("\n")


def read_scan_csv(text):
    """Parse ``scan --format csv`` output back into row dicts."""
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append(
            {
                "lambda": float(rec["lambda"]),
                "closed_form": float(rec["closed_form"]),
                "oracle": float(rec["oracle"]),
                "abs_diff": float(rec["abs_diff"]),
                "above_threshold": rec["above_threshold"] == "true",
            }
        )
    return rows


def _finite_part_for(f, n, spec):
    m, parity = split_n(n)
    if parity is Parity.ODD:
        return None
    return finite_part_integral(f, m, a=spec.split_point, tol=min(FP_TOL, spec.tol))


def compare_at(f, expansion, lam, tol):
    """One scan/eval row; oracle failures are recorded, not raised."""
    closed = evaluate_expansion(expansion, lam)
    row = {"lambda": lam, "closed_form": closed, "above_threshold": lam > expansion.lambda_min}
    try:
        res = sinc_transform_oracle(f, expansion.n, lam, tol=tol)
        row.update(oracle=res.value, oracle_error_estimate=res.error_estimate, oracle_method=res.method)
    except NumericalFailure as exc:
        best = exc.result
        row.update(oracle=math.nan, error=str(exc))
        if best is not None:
            row["oracle_error_estimate"] = best.error_estimate
    row["abs_diff"] = abs(closed - row["oracle"])
    return row


def cmd_eval(spec, out):
    f = spec.make_function()
    expansion = build_expansion(f, spec.n, _finite_part_for(f, spec.n, spec))
    lam = spec.lam
    if spec.enforce_threshold and lam <= expansion.lambda_min:
        raise BelowThreshold(lam, expansion.lambda_min)
    row = compare_at(f, expansion, lam, spec.tol)
    report = {**f.describe(), "n": spec.n, "threshold": expansion.lambda_min, **row}
    if row["above_threshold"]:
        report["pass"] = bool(row["abs_diff"] <= spec.tol)
    else:
        report["pass"] = None
        report["below_threshold"] = True
    if spec.format == "csv":
        write_rows([report], list(report), "csv", out)
    else:
        json.dump(report, out, indent=2)
        out.write("\n")
    if "error" in row or report["pass"] is False:
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_scan(spec, out, workers=None):
    f = spec.make_function()
    expansion = build_expansion(f, spec.n, _finite_part_for(f, spec.n, spec))
    lams = spec.lambdas()
    workers = workers or min(len(lams), os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda lam: compare_at(f, expansion, lam, spec.tol), lams))
    fields = SCAN_FIELDS if spec.format == "csv" else None
    extra = {**f.describe(), "n": spec.n, "threshold": expansion.lambda_min}
    write_rows(rows, fields, spec.format, out, extra)
    return EXIT_NUMERICAL if any("error" in r for r in rows) else EXIT_OK


def coefficient_rows(n):
    m, parity = split_n(n)
    rows = []
    for (power, order, _), l in zip(coefficient_table(n), range(m + 1)):
        if parity is Parity.EVEN:
            inner, pre, name = inner_sum_even(l, m), prefactor_C(l, m), "C"
        else:
            inner, pre, name = inner_sum_odd(l, m), prefactor_D(l, m), "D"
        rows.append(
            {
                "l": l,
                "power": power,
                "coefficient": name,
                "prefactor": fraction_str(pre),
                "derivative_order": order,
                "inner_sum": fraction_str(inner),
            }
        )
    return rows


def cmd_coeffs(n, out_format, out, f=None):
    m, parity = split_n(n)
    rows = coefficient_rows(n)
    extra = {
        "n": n,
        "m": m,
        "parity": parity.value,
        "fp_weight": fraction_str(finite_part_weight(n)),
        "outer_weight": f"{fraction_str(outer_factor(n))}*pi",
    }
    if f is not None:
        expansion = build_expansion(f, n, fp=0.0 if parity is Parity.EVEN else None)
        coeffs = dict(expansion.poly)
        for row in rows:
            row["value"] = coeffs[row["power"]]
        extra.update(f.describe())
    fields = list(rows[0]) if rows else []
    write_rows(rows, fields, out_format, out, extra)
    return EXIT_OK


def cmd_fp(spec, m, out):
    f = spec.make_function()
    report = {**f.describe(), "m": m, "split_point": spec.split_point}
    status = EXIT_OK
    try:
        res = finite_part_integral(f, m, a=spec.split_point, tol=min(FP_TOL, spec.tol))
    except NumericalFailure as exc:
        res = exc.result
        report["error"] = str(exc)
        status = EXIT_NUMERICAL
    report["taylor_subtraction"] = res.value
    report["tail_error_estimate"] = res.tail_error_estimate
    report["divergent_coefficients"] = res.divergent_coefficients
    if f.kind is Kind.PAPER_EXAMPLE and m == 2 and f.tau > 0:
        mellin = finite_part_paper_example_closed_form(f.tau, f.sigma).value
        report["closed_form_mellin"] = mellin
        report["difference"] = abs(res.value - mellin)
    json.dump(report, out, indent=2)
    out.write("\n")
    return status


def cmd_oracle(spec, out):
    f = spec.make_function()
    report = {**f.describe(), "n": spec.n, "lambda": spec.lam, "tol": spec.tol}
    status = EXIT_OK
    try:
        res = sinc_transform_oracle(f, spec.n, spec.lam, tol=spec.tol)
    except NumericalFailure as exc:
        res = exc.result
        status = EXIT_NUMERICAL
    report.update(
        value=res.value,
        error_estimate=res.error_estimate,
        segments_used=res.segments_used,
        converged=res.converged,
        method=res.method,
    )
    json.dump(report, out, indent=2)
    out.write("\n")
    return status


def cmd_integrand(spec, x_max, samples, out):
    """Integrand samples ``f(x) sin^n(lam x)/x^n`` on ``(0, x_max]`` for plotting."""
    f = spec.make_function()
    xs = np.linspace(x_max / samples, x_max, samples)
    lams = spec.lambdas() if spec.lambda_range else [spec.lam]
    rows = []
    for lam in lams:
        ys = sinc_transform_integrand(f, spec.n, lam)(xs)
        rows.extend({"lambda": lam, "x": float(x), "integrand": float(y)} for x, y in zip(xs, ys))
    write_rows(rows, ["lambda", "x", "integrand"], spec.format, out, {**f.describe(), "n": spec.n})
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="sinckit", description="Terminating closed forms of sinc transforms, checked by quadrature.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, need_n=True):
        p.add_argument("--function", default="paper-example", choices=sorted(REGISTRY))
        p.add_argument("--tau", type=float, default=1.0)
        p.add_argument("--sigma", type=float, default=1.0)
        if need_n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--split-point", type=float, default=1.0)

    def lam_range(p, required):
        p.add_argument("--lambda-min", type=float, required=required)
        p.add_argument("--lambda-max", type=float, required=required)
        p.add_argument("--points", type=int, default=15)

    p = sub.add_parser("eval", help="closed form vs oracle at one lambda")
    common(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--no-enforce", action="store_true", help="allow lambda at or below the threshold")

    p = sub.add_parser("scan", help="closed form vs oracle over a lambda grid")
    common(p)
    lam_range(p, True)

    p = sub.add_parser("coeffs", help="exact coefficient table for sin^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--function", choices=sorted(REGISTRY))
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("fp", help="finite part of int_0^inf f/x^(2m)")
    common(p, need_n=False)
    p.add_argument("--m", type=int, help="singularity order 2m (alternatively give --n = 2m)")
    p.add_argument("--n", type=int)

    p = sub.add_parser("oracle", help="quadrature value of the sinc transform")
    common(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)

    p = sub.add_parser("integrand", help="integrand samples for plotting")
    common(p)
    p.add_argument("--lambda", dest="lam", type=float)
    lam_range(p, False)
    p.add_argument("--x-max", type=float, default=10.0)
    p.add_argument("--samples", type=int, default=400)
    return parser


def _spec_from(args, lam=None, lambda_range=None):
    return RunSpec(
        function=args.function,
        tau=args.tau,
        sigma=args.sigma,
        n=getattr(args, "n", None),
        lam=lam,
        lambda_range=lambda_range,
        tol=args.tol,
        format=args.format,
        enforce_threshold=not getattr(args, "no_enforce", False),
        split_point=args.split_point,
    )


def run(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "coeffs":
            if not 1 <= args.n <= MAX_N:
                raise UsageError(f"--n must lie in [1, {MAX_N}]")
            f = make_builtin(args.function, tau=args.tau, sigma=args.sigma) if args.function else None
            return cmd_coeffs(args.n, args.format, out, f)
        if args.command == "fp":
            if args.m is None:
                if args.n is None or args.n % 2:
                    raise UsageError("fp needs --m, or an even --n = 2m")
                args.m = args.n // 2
            return cmd_fp(_spec_from(args), args.m, out)
        if args.command == "scan":
            return cmd_scan(_spec_from(args, lambda_range=(args.lambda_min, args.lambda_max, args.points)), out)
        if args.command == "integrand":
            rng = None
            if args.lambda_min is not None or args.lambda_max is not None:
                rng = (args.lambda_min, args.lambda_max, args.points)
            elif args.lam is None:
                raise UsageError("integrand needs --lambda or --lambda-min/--lambda-max")
            return cmd_integrand(_spec_from(args, lam=args.lam, lambda_range=rng), args.x_max, args.samples, out)
        spec = _spec_from(args, lam=args.lam)
        if not 1 <= spec.n <= MAX_N:
            raise UsageError(f"--n must lie in [1, {MAX_N}]")
        if not spec.lam > 0:
            raise UsageError("--lambda must be > 0")
        if args.command == "eval":
            return cmd_eval(spec, out)
        return cmd_oracle(spec, out)
    except UsageError as exc:
        print(f"sinckit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BelowThreshold as exc:
        print(f"sinckit: {exc} (use --no-enforce to evaluate anyway)", file=sys.stderr)
        return EXIT_THRESHOLD
    except NumericalFailure as exc:
        print(f"sinckit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SincKitError as exc:
        print(f"sinckit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
