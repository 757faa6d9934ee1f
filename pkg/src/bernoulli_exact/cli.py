"""Command-line front end.

    bernoulli-exact estimate --n 5 --m 0 --c 0.8
    bernoulli-exact compare  --n 1600 --m 917 --c 0.95 --z 2
    bernoulli-exact density  --n 7 --m 2 --points 201
    bernoulli-exact coverage --method exact --n 5 --c 0.8 --trials 100000 --seed 42

Data goes to stdout, diagnostics to stderr. Exit status: 0 on success, 2 for
invalid input, 3 when a numerical routine fails to converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

from . import __version__
from .baseline import standard_estimate
from .coverage import CSV_COLUMNS, run_coverage
from .discrete import discrete_interval, discrete_mean, discrete_posterior
from .errors import DomainError, NumericalFailure, UsageError
from .exact import (
    PosteriorDensity,
    SampleSummary,
    check_level,
    credible_interval,
    density_at,
    posterior_mean,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

MACHINE_DIGITS = 12
TEXT_DIGITS = 6


def _round(value: Any, digits: int = MACHINE_DIGITS) -> Any:
    if isinstance(value, float):
        return float(f"{value:.{digits}g}")
    return value


def _fmt(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return str(value)


def estimate_record(method: str, n: int, m: int, c: float, k: int = 10_000,
                    z: float | None = None) -> dict:
    """Build the output record for one estimate. Field order is fixed."""
    s = SampleSummary(n=n, m=m)
    c = check_level(c)
    if method == "exact":
        ci = credible_interval(s, c)
        return {"method": "exact", "n": s.n, "m": s.m, "c": c,
                "mean": posterior_mean(s), "lower": ci.lower, "upper": ci.upper}
    if method == "discrete":
        d = discrete_posterior(s, k)
        ci = discrete_interval(d, c)
        return {"method": "discrete", "n": s.n, "m": s.m, "c": c,
                "mean": discrete_mean(d), "lower": ci.lower, "upper": ci.upper, "k": d.k}
    if method == "standard":
        est = standard_estimate(s, c, z)
        return {"method": "standard", "n": s.n, "m": s.m, "c": c,
                "mean": est.point, "lower": est.lower, "upper": est.upper,
                "sd": est.sd, "se": est.se, "z": est.z,
                "clipped": est.clipped, "degenerate": est.degenerate}
    raise UsageError(f"unknown method {method!r}")


def _dump_json(obj: Any) -> str:
    """Single-line JSON with floats cut to 12 significant digits."""

    def prep(val: Any) -> Any:
        if isinstance(val, dict):
            return {key: prep(v) for key, v in val.items()}
        return _round(val)

    return json.dumps(prep(obj))


def _csv(rows: list[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(col), MACHINE_DIGITS) for col in columns])
    return buf.getvalue()


def _text(record: dict) -> str:
    width = max(len(key) for key in record)
    return "".join(f"{key:<{width}}  {_fmt(val, TEXT_DIGITS)}\n" for key, val in record.items())


def cmd_estimate(args: argparse.Namespace) -> str:
    record = estimate_record(args.method, args.n, args.m, args.c, k=args.k, z=args.z)
    if args.format == "json":
        return _dump_json(record) + "\n"
    if args.format == "csv":
        return _csv([record], list(record))
    return _text(record)


def cmd_compare(args: argparse.Namespace) -> str:
    exact = estimate_record("exact", args.n, args.m, args.c)
    std = estimate_record("standard", args.n, args.m, args.c, z=args.z)
    delta_lower = std["lower"] - exact["lower"]
    delta_upper = std["upper"] - exact["upper"]
    if args.format == "json":
        return _dump_json({
            "exact": exact,
            "standard": std,
            "delta_lower": delta_lower,
            "delta_upper": delta_upper,
            "standard_degenerate": std["degenerate"],
        }) + "\n"
    if args.format == "csv":
        columns = ["method", "n", "m", "c", "mean", "lower", "upper",
                   "sd", "se", "z", "degenerate", "delta_lower", "delta_upper"]
        std_row = dict(std, delta_lower=delta_lower, delta_upper=delta_upper)
        return _csv([exact, std_row], columns)

    lines = [f"{'method':<10}{'mean':>12}{'lower':>12}{'upper':>12}{'width':>12}"]
    for rec in (exact, std):
        cells = [rec["mean"], rec["lower"], rec["upper"], rec["upper"] - rec["lower"]]
        line = f"{rec['method']:<10}" + "".join(f"{_fmt(v, TEXT_DIGITS):>12}" for v in cells)
        if rec.get("degenerate"):
            line += "  DEGENERATE"
        lines.append(line)
    lines.append(
        f"delta (standard - exact): lower {_fmt(delta_lower, TEXT_DIGITS)}, "
        f"upper {_fmt(delta_upper, TEXT_DIGITS)}"
    )
    return "\n".join(lines) + "\n"


def cmd_density(args: argparse.Namespace) -> str:
    if args.points < 2:
        raise DomainError(f"--points must be at least 2, got {args.points}")
    d = PosteriorDensity(SampleSummary(n=args.n, m=args.m))
    last = args.points - 1
    rows = []
    for i in range(args.points):
        x = i / last
        rows.append(f"{_fmt(x, MACHINE_DIGITS)},{_fmt(density_at(d, x), MACHINE_DIGITS)}\n")
    return "".join(rows)


def cmd_coverage(args: argparse.Namespace) -> str:
    report = run_coverage(args.method, args.n, args.c, args.trials, args.seed,
                          k=args.k if args.method == "discrete" else None,
                          z=args.z, workers=args.workers)
    record = report.to_dict()
    if args.format == "csv":
        return _csv([record], CSV_COLUMNS)
    return _dump_json(record) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bernoulli-exact",
        description="Exact (beta-posterior) estimate and credible interval for a "
                    "Bernoulli success probability from m successes in n trials.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def sample_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, required=True, help="number of trials")
        p.add_argument("--m", type=int, required=True, help="number of successes")

    p = sub.add_parser("estimate", help="point estimate and interval")
    sample_args(p)
    p.add_argument("--c", type=float, default=0.95, help="coverage level in (0, 1)")
    p.add_argument("--method", choices=("exact", "standard", "discrete"), default="exact")
    p.add_argument("--k", type=int, default=10_000, help="grid size for --method discrete")
    p.add_argument("--z", type=float, default=None, help="multiplier override for --method standard")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("compare", help="exact and standard intervals side by side")
    sample_args(p)
    p.add_argument("--c", type=float, default=0.95)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("density", help="posterior density as CSV rows x,e(x)")
    sample_args(p)
    p.add_argument("--points", type=int, default=201)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("coverage", help="Monte Carlo coverage under the uniform prior")
    p.add_argument("--method", default="exact", help="exact, standard or discrete")
    p.add_argument("--n", type=int, required=True, help="trials per experiment")
    p.add_argument("--c", type=float, default=0.95)
    p.add_argument("--trials", type=int, default=10_000, help="number of experiments")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=10_000)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_coverage)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (DomainError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
