"""Seeded simulation of the i.i.d. product belief measure.

Sampling follows the reduction used by the limit theorems themselves: an
event probability under the product belief measure equals an ordinary
probability of the per-coordinate min-sums (lower events) and max-sums
(upper events) under the mass law.  Each trial therefore draws focal
elements i.i.d. from the categorical mass law and accumulates

    S_min = sum of focal minima,   S_max = sum of focal maxima.

Randomness is counter-based (Philox): a stream is a pure function of
(seed, replication, coordinate), so any partition of work over any number
of workers reproduces identical draws.  The estimator batches replications
into fixed-size blocks, each with its own counter-derived stream, and
merges integer tallies associatively; results are bit-reproducible for a
given (seed, plan) at any worker count.  The per-block fast path draws the
multinomial of focal counts, which carries the same joint law of
(S_min, S_max) as coordinate-by-coordinate sampling.
"""

from __future__ import annotations

import hashlib
import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .belief import BeliefModel
from .errors import DegenerateVariance
from .moments import SIGMA_FLOOR, ChoquetMoments

_KEY_DOMAIN = np.uint64(0x9E3779B97F4A7C15)
_CTR_TRIAL = np.uint64(0)
_CTR_BLOCK = np.uint64(1)
BLOCK_SIZE = 1 << 14

WORKERS_ENV = "BELIEFCLT_WORKERS"

ONE_SIDED_LOWER = "one_sided_lower"
ONE_SIDED_UPPER = "one_sided_upper"
TWO_SIDED = "two_sided"

_DEFINITIONS = {
    ONE_SIDED_LOWER: "(S_min - n*lower_mean)/(sqrt(n)*lower_sd) >= alpha1",
    ONE_SIDED_UPPER: "(S_max - n*upper_mean)/(sqrt(n)*upper_sd) < alpha1",
    TWO_SIDED: "alpha1 <= (S_min - n*lower_mean)/(sqrt(n)*lower_sd) "
               "and (S_max - n*upper_mean)/(sqrt(n)*upper_sd) <= alpha2",
}

DEFAULT_ALPHA_GRID = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)
DEFAULT_N_VALUES = (16, 64, 256, 1024, 4096, 16384)
DEFAULT_REPS = 1_000_000


def default_alpha_pairs(grid: Sequence[float] = DEFAULT_ALPHA_GRID) -> tuple[tuple[float, float], ...]:
    """Cartesian pairs of the grid with alpha1 <= alpha2."""
    return tuple((a1, a2) for a1 in grid for a2 in grid if a1 <= a2)


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument, else the BELIEFCLT_WORKERS variable, else cpu count."""
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SimPlan:
    """Experiment grid: sequence lengths, replications, seed, alpha grids.

    Alpha grids may be flat sequences (same events for all n) or mappings
    from n to a sequence, which supports event thresholds that vary with n.
    """

    model: BeliefModel
    n_values: tuple[int, ...] = DEFAULT_N_VALUES
    reps: int = DEFAULT_REPS
    seed: int = 0
    alpha_one_sided: Sequence[float] | Mapping[int, Sequence[float]] = DEFAULT_ALPHA_GRID
    alpha_two_sided: Sequence[tuple[float, float]] | Mapping[int, Sequence[tuple[float, float]]] = field(
        default_factory=default_alpha_pairs
    )
    slack: float = 1.0

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if any(n < 1 for n in self.n_values):
            raise ValueError("n values must be positive")
        if list(self.n_values) != sorted(set(self.n_values)):
            raise ValueError("n values must be strictly increasing")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        for n in self.n_values:
            for a1, a2 in self.pairs_for(n):
                if a1 > a2:
                    warnings.warn(
                        f"two-sided pair ({a1}, {a2}) has alpha1 > alpha2; "
                        "the event is empty in the limit",
                        stacklevel=2,
                    )

    def alphas_for(self, n: int) -> tuple[float, ...]:
        if isinstance(self.alpha_one_sided, Mapping):
            return tuple(float(a) for a in self.alpha_one_sided.get(n, ()))
        return tuple(float(a) for a in self.alpha_one_sided)

    def pairs_for(self, n: int) -> tuple[tuple[float, float], ...]:
        if isinstance(self.alpha_two_sided, Mapping):
            pairs = self.alpha_two_sided.get(n, ())
        else:
            pairs = self.alpha_two_sided
        return tuple((float(a1), float(a2)) for a1, a2 in pairs)

    def digest(self) -> str:
        """Deterministic id of the full plan, for run identification."""
        h = hashlib.sha256()
        h.update(repr(self.model).encode())
        h.update(repr((self.n_values, self.reps, self.seed, self.slack)).encode())
        for n in self.n_values:
            h.update(repr((n, self.alphas_for(n), self.pairs_for(n))).encode())
        return h.hexdigest()[:12]


@dataclass(frozen=True)
class EventResult:
    """Empirical frequency of one event at one n, with its exact definition."""

    n: int
    kind: str
    alpha1: float
    alpha2: float
    count: int
    reps: int
    definition: str

    @property
    def frequency(self) -> float:
        return self.count / self.reps

    @property
    def se(self) -> float:
        f = self.frequency
        return math.sqrt(f * (1.0 - f) / self.reps)


@dataclass(frozen=True)
class SimResult:
    """All event frequencies of one simulation run."""

    run_id: str
    seed: int
    reps: int
    rows: tuple[EventResult, ...]

    def rows_for(self, n: int, kind: str | None = None) -> tuple[EventResult, ...]:
        return tuple(
            r for r in self.rows if r.n == n and (kind is None or r.kind == kind)
        )


def derive_stream(seed: int, replication_index: int, coordinate_index: int) -> np.random.Generator:
    """Counter-based stream: a pure function of (seed, replication, coordinate).

    The triple is placed in the Philox key/counter words, so streams for
    distinct triples never overlap and are identical regardless of worker
    count or scheduling order.
    """
    key = np.array([np.uint64(seed), _KEY_DOMAIN], dtype=np.uint64)
    counter = np.array(
        [0, np.uint64(coordinate_index), np.uint64(replication_index), _CTR_TRIAL],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def _block_stream(seed: int, n_index: int, block_index: int) -> np.random.Generator:
    # same key space as derive_stream, disjoint counter tag
    key = np.array([np.uint64(seed), _KEY_DOMAIN], dtype=np.uint64)
    counter = np.array(
        [0, np.uint64(block_index), np.uint64(n_index), _CTR_BLOCK], dtype=np.uint64
    )
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def _cumulative_masses(model: BeliefModel) -> np.ndarray:
    masses = np.array([m for _, m in model.focal], dtype=float)
    cum = np.cumsum(masses)
    cum[-1] = 1.0
    return cum


def sample_trial(model: BeliefModel, n: int, stream: np.random.Generator) -> tuple[float, float]:
    """One trial: draw n focal elements i.i.d., return (S_min, S_max).

    The stream should be positioned deterministically for the trial, e.g.
    ``derive_stream(seed, replication_index, 0)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    mins = np.array([f.min for f, _ in model.focal], dtype=float)
    maxs = np.array([f.max for f, _ in model.focal], dtype=float)
    cum = _cumulative_masses(model)
    u = stream.random(n)
    idx = np.minimum(np.searchsorted(cum, u, side="right"), len(cum) - 1)
    return float(mins[idx].sum()), float(maxs[idx].sum())


def _simulate_block(args) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
    (seed, n_index, n, block_index, block_len, mins, maxs, masses,
     mu_low, sd_low, mu_up, sd_up, alphas, pairs) = args
    rng = _block_stream(seed, n_index, block_index)
    counts = rng.multinomial(n, masses, size=block_len)
    s_min = counts @ mins
    s_max = counts @ maxs
    root = math.sqrt(n)
    t_low = (s_min - n * mu_low) / (root * sd_low)
    t_up = (s_max - n * mu_up) / (root * sd_up)
    lower = np.array([(t_low >= a).sum() for a in alphas], dtype=np.int64)
    upper = np.array([(t_up < a).sum() for a in alphas], dtype=np.int64)
    two = np.array(
        [((a1 <= t_low) & (t_up <= a2)).sum() for a1, a2 in pairs], dtype=np.int64
    )
    return n_index, lower, upper, two


def estimate_events(
    plan: SimPlan, moments: ChoquetMoments, workers: int | None = None
) -> SimResult:
    """Estimate all one- and two-sided event frequencies of the plan.

    Frequencies are counts over exactly ``plan.reps`` independent trials per
    n, bit-reproducible for a given (seed, plan) at any worker count.
    """
    if moments.lower_sd < SIGMA_FLOOR or moments.upper_sd < SIGMA_FLOOR:
        raise DegenerateVariance(
            f"sigma_low={moments.lower_sd!r}, sigma_up={moments.upper_sd!r}: "
            "cannot normalize sums"
        )
    workers = resolve_workers(workers)
    mins = np.array([f.min for f, _ in plan.model.focal], dtype=float)
    maxs = np.array([f.max for f, _ in plan.model.focal], dtype=float)
    masses = np.array([m for _, m in plan.model.focal], dtype=float)

    tasks = []
    for n_index, n in enumerate(plan.n_values):
        alphas = plan.alphas_for(n)
        pairs = plan.pairs_for(n)
        n_blocks = (plan.reps + BLOCK_SIZE - 1) // BLOCK_SIZE
        for b in range(n_blocks):
            block_len = min(BLOCK_SIZE, plan.reps - b * BLOCK_SIZE)
            tasks.append(
                (plan.seed, n_index, n, b, block_len, mins, maxs, masses,
                 moments.lower_mean, moments.lower_sd, moments.upper_mean,
                 moments.upper_sd, alphas, pairs)
            )

    lower_tally = {i: np.zeros(len(plan.alphas_for(n)), dtype=np.int64)
                   for i, n in enumerate(plan.n_values)}
    upper_tally = {i: np.zeros(len(plan.alphas_for(n)), dtype=np.int64)
                   for i, n in enumerate(plan.n_values)}
    two_tally = {i: np.zeros(len(plan.pairs_for(n)), dtype=np.int64)
                 for i, n in enumerate(plan.n_values)}

    if workers == 1:
        partials = map(_simulate_block, tasks)
    else:
        executor = ProcessPoolExecutor(max_workers=workers)
        try:
            partials = list(executor.map(_simulate_block, tasks, chunksize=8))
        finally:
            executor.shutdown()
    for n_index, lower, upper, two in partials:
        lower_tally[n_index] += lower
        upper_tally[n_index] += upper
        two_tally[n_index] += two

    rows: list[EventResult] = []
    for n_index, n in enumerate(plan.n_values):
        alphas = plan.alphas_for(n)
        pairs = plan.pairs_for(n)
        for j, a in enumerate(alphas):
            rows.append(EventResult(n, ONE_SIDED_LOWER, a, math.nan,
                                    int(lower_tally[n_index][j]), plan.reps,
                                    _DEFINITIONS[ONE_SIDED_LOWER]))
        for j, a in enumerate(alphas):
            rows.append(EventResult(n, ONE_SIDED_UPPER, a, math.nan,
                                    int(upper_tally[n_index][j]), plan.reps,
                                    _DEFINITIONS[ONE_SIDED_UPPER]))
        for j, (a1, a2) in enumerate(pairs):
            rows.append(EventResult(n, TWO_SIDED, a1, a2,
                                    int(two_tally[n_index][j]), plan.reps,
                                    _DEFINITIONS[TWO_SIDED]))
    return SimResult(plan.digest(), plan.seed, plan.reps, tuple(rows))
