"""Acceptance gate: each test checks one numbered criterion end to end and
prints one ACCEPTANCE pass/fail line (visible with pytest -s, or on failure).

The heavy simulations (reps = 10^6, n up to 16384) run once per model in a
module-scoped fixture and are shared by the one-sided, two-sided, and rate
criteria.
"""

import math
import time

import numpy as np
import pytest

from beliefclt import (
    IntervalEvent,
    MODEL_REGISTRY,
    SimPlan,
    belief,
    bernoulli_special_case,
    bvn_cdf,
    estimate_events,
    fit_rate,
    moments_by_enumeration,
    moments_by_integration,
    one_sided_report,
    rho_M_invariance,
    std_normal_cdf,
    two_sided_limit,
    two_sided_report,
)
from beliefclt.harness import ExperimentRow, VerificationReport
from beliefclt.modelio import SIM_SCHEMA, csv_text, sim_rows
from beliefclt.montecarlo import ONE_SIDED_LOWER, ONE_SIDED_UPPER

from _helpers import random_model
from test_gauss import bvn_quadrature_oracle

SEED = 20260816
MOMENT_FIELDS = ("lower_mean", "upper_mean", "lower_sd", "upper_sd",
                 "cross_moment", "rho_prime", "rho")


def _line(num: int, desc: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:2d} {desc}: {status} ({detail})")
    assert ok, f"criterion {num} ({desc}): {detail}"


@pytest.fixture(scope="module")
def clt_runs():
    """One full-budget simulation per model, shared by criteria 6, 7, 8."""
    runs = {}
    t0 = time.time()
    for name in ("bernoulli", "two_interval"):
        model = MODEL_REGISTRY[name]()
        mom = moments_by_enumeration(model)
        plan = SimPlan(model, reps=1_000_000, seed=SEED)
        sim = estimate_events(plan, mom)
        runs[name] = (plan, mom, sim)
    runs["elapsed"] = time.time() - t0
    return runs


def test_criterion_01_moment_route_equivalence():
    rng = np.random.default_rng(SEED)
    t0 = time.time()
    worst = 0.0
    for _ in range(200):
        model = random_model(rng, max_focal=50)
        enum = moments_by_enumeration(model, allow_degenerate=True).as_dict()
        integ = moments_by_integration(model, allow_degenerate=True).as_dict()
        for f in MOMENT_FIELDS:
            a, b = enum[f], integ[f]
            if math.isnan(a) and math.isnan(b):
                continue
            worst = max(worst, abs(a - b))
    elapsed = time.time() - t0
    _line(1, "moment route equivalence",
          worst <= 1e-10 and elapsed < 10.0,
          f"200 models, max field gap {worst:.2e}, {elapsed:.1f}s")


def test_criterion_02_bernoulli_special_case():
    m = bernoulli_special_case(0.3, 0.7)
    gaps = {
        "lower_mean": abs(m.lower_mean - 0.3),
        "upper_mean": abs(m.upper_mean - 0.7),
        "lower_var": abs(m.lower_sd**2 - 0.21),
        "upper_var": abs(m.upper_sd**2 - 0.21),
        "rho": abs(m.rho - 3.0 / 7.0),
    }
    worst = max(gaps.values())
    _line(2, "Bernoulli special case", worst <= 1e-12,
          f"max gap to exact rationals {worst:.2e}")


def test_criterion_03_m_invariance():
    worst = 0.0
    for name, factory in MODEL_REGISTRY.items():
        model = factory()
        r1, r2 = rho_M_invariance(model, model.bound + 1.0)
        worst = max(worst, abs(r1 - r2))
    _line(3, "bound invariance of rho", worst <= 1e-10,
          f"{len(MODEL_REGISTRY)} models, max |rho(M) - rho(M+1)| = {worst:.2e}")


def test_criterion_04_additive_degeneration():
    model = MODEL_REGISTRY["coin"]()
    m = moments_by_enumeration(model)
    moment_gap = max(abs(m.upper_mean - m.lower_mean),
                     abs(m.upper_sd - m.lower_sd), abs(m.rho - 1.0))
    target_gap = 0.0
    grid = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)
    for a1 in grid:
        for a2 in grid:
            if a1 > a2:
                continue
            classical = std_normal_cdf(a2) - std_normal_cdf(a1)
            target_gap = max(target_gap,
                             abs(two_sided_limit(a1, a2, 1.0) - classical))
    _line(4, "additive degeneration",
          moment_gap <= 1e-12 and target_gap <= 1e-7,
          f"moment gap {moment_gap:.2e}, two-sided target gap {target_gap:.2e}")


def test_criterion_05_bvn_accuracy():
    pts = (-3.0, -1.0, 0.0, 1.0, 3.0)
    rhos = (-0.95, -0.5, 0.0, 0.5, 0.95)
    worst = 0.0
    for rho in rhos:
        for a in pts:
            for b in pts:
                worst = max(worst, abs(bvn_cdf(a, b, rho)
                                       - bvn_quadrature_oracle(a, b, rho)))
    closed = max(abs(bvn_cdf(0, 0, r) - (0.25 + math.asin(r) / (2 * math.pi)))
                 for r in rhos)
    _line(5, "bivariate normal accuracy",
          worst <= 1e-7 and closed <= 1e-7,
          f"5x5x5 oracle gap {worst:.2e}, arcsine closed form gap {closed:.2e}")


def test_criterion_06_one_sided_clt(clt_runs):
    worst_margin = math.inf
    detail = []
    for name in ("bernoulli", "two_interval"):
        plan, mom, sim = clt_runs[name]
        report = one_sided_report(sim, mom, plan)
        margin = min(r.tolerance - r.deviation for r in report.rows)
        worst_margin = min(worst_margin, margin)
        detail.append(f"{name} {len(report.rows)} rows")
    ok = worst_margin >= 0.0 and clt_runs["elapsed"] <= 600.0
    _line(6, "one-sided limits", ok,
          f"{', '.join(detail)}, min tolerance margin {worst_margin:.2e}, "
          f"sim time {clt_runs['elapsed']:.0f}s")


def test_criterion_07_two_sided_clt(clt_runs):
    worst_margin = math.inf
    rows_total = 0
    for name in ("bernoulli", "two_interval"):
        plan, mom, sim = clt_runs[name]
        report = two_sided_report(sim, mom, plan)
        margin = min(r.tolerance - r.deviation for r in report.rows)
        worst_margin = min(worst_margin, margin)
        rows_total += len(report.rows)
    ok = worst_margin >= 0.0 and clt_runs["elapsed"] <= 600.0
    _line(7, "two-sided limits", ok,
          f"{rows_total} rows over 28 alpha pairs, "
          f"min tolerance margin {worst_margin:.2e}")


def test_criterion_08_convergence_rate(clt_runs):
    slopes = {}
    for name in ("bernoulli", "two_interval"):
        plan, mom, sim = clt_runs[name]
        fit = fit_rate(two_sided_report(sim, mom, plan))
        slopes[name] = (fit, len(fit.used_n))
    empirical_ok = all(
        n_pts < 3 or (-0.75 <= fit.slope <= -0.25)
        for fit, n_pts in slopes.values())
    signal_ok = any(n_pts >= 3 for _, n_pts in slopes.values())

    synthetic = VerificationReport("synthetic", tuple(
        ExperimentRow("synthetic", n, math.nan, math.nan, 0.5,
                      0.5 + 0.7 / math.sqrt(n), 1e-9, 1.0)
        for n in (16, 64, 256, 1024, 4096, 16384)), 0, 1, 0.0)
    synth_gap = abs(fit_rate(synthetic).slope + 0.5)

    detail = ", ".join(f"{k} slope {fit.slope:.3f} ({n_pts} pts)"
                       for k, (fit, n_pts) in slopes.items())
    _line(8, "Berry-Esseen rate window",
          empirical_ok and signal_ok and synth_gap <= 1e-12,
          f"{detail}; synthetic slope gap {synth_gap:.1e}")


def test_criterion_09_reproducibility():
    model = MODEL_REGISTRY["bernoulli"]()
    mom = moments_by_enumeration(model)
    plan = SimPlan(model, n_values=(16, 64), reps=50_000, seed=SEED)
    csvs = []
    for workers in (1, 2, 3, 1):
        sim = estimate_events(plan, mom, workers=workers)
        csvs.append(csv_text(sim_rows(sim), SIM_SCHEMA))
    ok = all(c == csvs[0] for c in csvs)
    _line(9, "bit reproducibility across workers", ok,
          f"4 runs at workers 1/2/3/1, {len(csvs[0].splitlines()) - 1} "
          "CSV rows each, byte-identical")


def test_criterion_10_n1_consistency():
    worst_ratio = 0.0
    checked = 0
    for name in ("bernoulli", "two_interval"):
        model = MODEL_REGISTRY[name]()
        mom = moments_by_enumeration(model)
        plan = SimPlan(model, n_values=(1,), reps=1_000_000, seed=SEED,
                       alpha_two_sided=())
        sim = estimate_events(plan, mom)
        for row in sim.rows:
            if row.kind == ONE_SIDED_LOWER:
                event = IntervalEvent.at_least(
                    mom.lower_mean + row.alpha1 * mom.lower_sd)
            else:
                assert row.kind == ONE_SIDED_UPPER
                event = IntervalEvent.less_than(
                    mom.upper_mean + row.alpha1 * mom.upper_sd)
            exact = belief(model, event)
            dev = abs(row.frequency - exact)
            limit = 4.0 * row.se
            if limit == 0.0:
                assert dev == 0.0, (name, row.alpha1, dev)
            else:
                worst_ratio = max(worst_ratio, dev / limit)
            checked += 1
    _line(10, "n=1 matches exact beliefs", worst_ratio <= 1.0,
          f"{checked} events, worst deviation at {worst_ratio:.2f} of the "
          "4*SE budget")
