"""Central limit theorems for belief measures.

A belief measure assigns each event the probability that a random compact
set (a focal element) is contained in it.  For i.i.d. products of such
measures, the suitably normalized sums admit normal limits: one-sided
events converge to Gaussian tail probabilities driven by the lower/upper
means and standard deviations, and two-sided events converge to a bivariate
normal probability whose correlation couples the min- and max-statistics.

The package computes the limit parameters by two independent routes
(discrete enumeration and survival-function integration), evaluates the
Gaussian limits, simulates the product measure with reproducible
counter-based streams, and verifies the convergence empirically, including
the O(1/sqrt(n)) rate.
"""

from .belief import (
    BeliefModel,
    FocalElement,
    MonotonicityReport,
    Violation,
    belief,
    check_capacity_monotonicity,
    grid_cells,
    plausibility,
    total_monotonicity_check,
    validate_model,
)
from .errors import (
    BeliefCltError,
    DegenerateVariance,
    GridTooLarge,
    InvalidProbabilities,
    ParseError,
    ValidationError,
)
from .gauss import (
    BvnParams,
    bvn_cdf,
    bvn_cdf_params,
    normal_quantile,
    std_normal_cdf,
    two_sided_limit,
)
from .harness import (
    MODEL_REGISTRY,
    ExperimentRow,
    RateFit,
    VerificationReport,
    bernoulli_model,
    bernoulli_special_case,
    fit_rate,
    one_sided_report,
    special_cases_report,
    two_sided_report,
    verify_one_sided,
    verify_two_sided,
)
from .intervals import IntervalEvent
from .modelio import (
    emit_csv,
    load_model,
    load_plan,
    save_model,
    save_plan,
)
from .moments import (
    ChoquetMoments,
    moments_by_enumeration,
    moments_by_integration,
    rho_M_invariance,
)
from .montecarlo import (
    EventResult,
    SimPlan,
    SimResult,
    derive_stream,
    estimate_events,
    resolve_workers,
    sample_trial,
)

__version__ = "0.1.0"

__all__ = [
    "BeliefCltError",
    "BeliefModel",
    "BvnParams",
    "ChoquetMoments",
    "DegenerateVariance",
    "EventResult",
    "ExperimentRow",
    "FocalElement",
    "GridTooLarge",
    "IntervalEvent",
    "InvalidProbabilities",
    "MODEL_REGISTRY",
    "MonotonicityReport",
    "ParseError",
    "RateFit",
    "SimPlan",
    "SimResult",
    "ValidationError",
    "VerificationReport",
    "Violation",
    "belief",
    "bernoulli_model",
    "bernoulli_special_case",
    "bvn_cdf",
    "bvn_cdf_params",
    "check_capacity_monotonicity",
    "derive_stream",
    "emit_csv",
    "estimate_events",
    "fit_rate",
    "grid_cells",
    "load_model",
    "load_plan",
    "moments_by_enumeration",
    "moments_by_integration",
    "normal_quantile",
    "one_sided_report",
    "plausibility",
    "resolve_workers",
    "rho_M_invariance",
    "sample_trial",
    "save_model",
    "save_plan",
    "special_cases_report",
    "std_normal_cdf",
    "total_monotonicity_check",
    "two_sided_limit",
    "two_sided_report",
    "validate_model",
    "verify_one_sided",
    "verify_two_sided",
]
