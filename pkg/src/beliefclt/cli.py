"""Command-line interface.

Subcommands: moments, bvn, simulate, verify-one-sided, verify-two-sided,
special-cases, rate-fit.  Every run logs its fully resolved configuration
(including defaulted fields and the seed) to stderr, so any output file can
be reproduced from the log line alone.  Exit status is nonzero exactly when
a declared-tolerance check fails.

Worker count comes from the BELIEFCLT_WORKERS environment variable and
defaults to the number of logical cores.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .errors import BeliefCltError
from .gauss import bvn_cdf
from .harness import (
    ExperimentRow,
    VerificationReport,
    fit_rate,
    one_sided_report,
    special_cases_report,
    two_sided_report,
)
from .modelio import (
    REPORT_SCHEMA,
    SIM_SCHEMA,
    csv_text,
    emit_csv,
    load_model,
    load_plan,
    report_rows,
    sim_rows,
)
from .moments import moments_by_enumeration, moments_by_integration
from .montecarlo import estimate_events, resolve_workers

log = logging.getLogger("beliefclt")

_MOMENT_FIELDS = ("lower_mean", "upper_mean", "lower_sd", "upper_sd",
                  "cross_moment", "rho_prime", "rho")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None,
                        help="override the plan seed")
    parser.add_argument("--reps", type=int, default=None,
                        help="override the plan replication count")
    parser.add_argument("--out-dir", default=".",
                        help="directory for output files (default: .)")
    parser.add_argument("--format", choices=("csv", "text"), default="csv",
                        help="write CSV files or print tables to stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beliefclt",
        description="Central limit theorem experiments for belief measures",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="Choquet moments of a model, both routes")
    p.add_argument("model", help="model file")
    _common(p)

    p = sub.add_parser("bvn", help="standard bivariate normal CDF P(X<=a, Y<=b)")
    p.add_argument("a", type=float)
    p.add_argument("b", type=float)
    p.add_argument("rho", type=float)
    _common(p)

    p = sub.add_parser("simulate", help="run a simulation plan, write frequencies")
    p.add_argument("plan", help="plan file")
    _common(p)

    for name in ("verify-one-sided", "verify-two-sided"):
        p = sub.add_parser(name, help=f"{name.replace('-', ' ')} limit check")
        p.add_argument("plan", help="plan file")
        _common(p)

    p = sub.add_parser("special-cases",
                       help="closed-form checks: Bernoulli, additive, bound invariance")
    _common(p)

    p = sub.add_parser("rate-fit", help="fit the convergence rate of a report CSV")
    p.add_argument("report", help="report CSV produced by a verify subcommand")
    _common(p)
    return parser


def _log_config(args: argparse.Namespace, **extra) -> None:
    fields = {"command": args.command, "out_dir": getattr(args, "out_dir", "."),
              "format": getattr(args, "format", "csv"),
              "workers": resolve_workers(), **extra}
    log.info("config: %s", " ".join(f"{k}={v}" for k, v in fields.items()))


def _plan_with_overrides(args: argparse.Namespace):
    plan = load_plan(args.plan)
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.reps is not None:
        changes["reps"] = args.reps
    if changes:
        plan = dataclasses.replace(plan, **changes)
    return plan


def _plan_summary(plan) -> dict:
    return {
        "n_values": list(plan.n_values), "reps": plan.reps, "seed": plan.seed,
        "alpha_one_sided": plan.alpha_one_sided,
        "alpha_two_sided_pairs": len(plan.pairs_for(plan.n_values[0])),
        "slack": plan.slack, "run_id": plan.digest(),
    }


def _write_or_print(args: argparse.Namespace, rows, schema, filename: str) -> None:
    if args.format == "text":
        sys.stdout.write(csv_text(rows, schema).replace(",", "\t"))
        return
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / filename
    emit_csv(rows, schema, path)
    print(f"wrote {path}")


def _report_summary(report: VerificationReport) -> str:
    lines = []
    worst = max(report.rows, key=lambda r: r.deviation - r.tolerance, default=None)
    n_pass = sum(r.passed for r in report.rows)
    lines.append(f"{report.name}: {n_pass}/{len(report.rows)} rows within tolerance")
    if worst is not None:
        lines.append(
            f"  worst row: {worst.experiment} n={worst.n} "
            f"alpha=({worst.alpha1:g}, {worst.alpha2:g}) "
            f"deviation={worst.deviation:.3e} tolerance={worst.tolerance:.3e}"
        )
    if report.rate is not None:
        r = report.rate
        if r.insufficient_signal:
            lines.append("  rate fit: insufficient signal "
                         f"({len(r.used_n)} points above the noise floor)")
        else:
            lines.append(
                f"  rate fit: slope={r.slope:.4f} K_hat={r.k_hat:.4f} "
                f"points={list(r.used_n)} "
                f"{'within' if r.slope_in_window else 'OUTSIDE'} [-0.75, -0.25]"
            )
    lines.append(f"  overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)


def _cmd_moments(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    _log_config(args, model=args.model, focal=len(model.focal), bound=model.bound)
    enum = moments_by_enumeration(model, allow_degenerate=True)
    integ = moments_by_integration(model, allow_degenerate=True)
    de, di = enum.as_dict(), integ.as_dict()

    def _delta(f):
        a, b = de[f], di[f]
        if math.isnan(a) and math.isnan(b):
            return 0.0
        return abs(a - b)

    if args.format == "csv":
        rows = [(f, de[f], di[f], _delta(f)) for f in _MOMENT_FIELDS]
        sys.stdout.write(csv_text(
            rows, ("field", "enumeration", "integration", "abs_delta")))
    else:
        for f in _MOMENT_FIELDS:
            print(f"{f:>12} = {de[f]:.17g}   (integration {di[f]:.17g}, "
                  f"delta {_delta(f):.3e})")
    print(f"max route delta: {max(_delta(f) for f in _MOMENT_FIELDS):.3e}",
          file=sys.stderr)
    return 0


def _cmd_bvn(args: argparse.Namespace) -> int:
    _log_config(args, a=args.a, b=args.b, rho=args.rho)
    value = bvn_cdf(args.a, args.b, args.rho)
    if args.format == "csv":
        sys.stdout.write(csv_text([(args.a, args.b, args.rho, value)],
                                  ("a", "b", "rho", "value")))
    else:
        print(f"{value:.17g}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    plan = _plan_with_overrides(args)
    _log_config(args, plan=args.plan, **_plan_summary(plan))
    moments = moments_by_enumeration(plan.model)
    sim = estimate_events(plan, moments)
    _write_or_print(args, sim_rows(sim), SIM_SCHEMA, f"simulate_{sim.run_id}.csv")
    return 0


def _cmd_verify(args: argparse.Namespace, two_sided: bool) -> int:
    plan = _plan_with_overrides(args)
    _log_config(args, plan=args.plan, **_plan_summary(plan))
    moments = moments_by_enumeration(plan.model)
    sim = estimate_events(plan, moments)
    if two_sided:
        report = two_sided_report(sim, moments, plan)
    else:
        report = one_sided_report(sim, moments, plan)
    _write_or_print(args, report_rows(report), REPORT_SCHEMA,
                    f"report_{report.name}_{sim.run_id}.csv")
    print(_report_summary(report))
    return 0 if report.passed else 1


def _cmd_special_cases(args: argparse.Namespace) -> int:
    _log_config(args)
    report = special_cases_report()
    _write_or_print(args, report_rows(report), REPORT_SCHEMA,
                    "report_special_cases.csv")
    print(_report_summary(report))
    return 0 if report.passed else 1


def _cmd_rate_fit(args: argparse.Namespace) -> int:
    _log_config(args, report=args.report)
    rows = []
    with open(args.report, newline="") as fh:
        for rec in csv.DictReader(fh):
            rows.append(ExperimentRow(
                rec["experiment"], int(rec["n"]), float(rec["alpha1"]),
                float(rec["alpha2"]), float(rec["theory"]),
                float(rec["empirical"]), float(rec["se"]), math.inf,
            ))
    report = VerificationReport("rate_fit_input", tuple(rows), 0, 0, 0.0)
    fit = fit_rate(report)
    for n, dev in fit.max_deviation:
        print(f"n={n:>7}  max deviation = {dev:.6e}")
    if fit.insufficient_signal:
        print(f"insufficient signal: {len(fit.used_n)} points above the "
              "noise floor, need 3")
        return 0
    print(f"slope = {fit.slope:.6f}  intercept = {fit.intercept:.6f}  "
          f"K_hat = {fit.k_hat:.6f}  points = {list(fit.used_n)}")
    print(f"slope within [-0.75, -0.25]: {fit.slope_in_window}")
    return 0 if fit.slope_in_window else 1


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(message)s")
    args = build_parser().parse_args(argv)
    handlers = {
        "moments": _cmd_moments,
        "bvn": _cmd_bvn,
        "simulate": _cmd_simulate,
        "verify-one-sided": lambda a: _cmd_verify(a, two_sided=False),
        "verify-two-sided": lambda a: _cmd_verify(a, two_sided=True),
        "special-cases": _cmd_special_cases,
        "rate-fit": _cmd_rate_fit,
    }
    try:
        return handlers[args.command](args)
    except (BeliefCltError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
