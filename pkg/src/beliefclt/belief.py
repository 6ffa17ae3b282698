"""Finitely-supported belief measures over bounded interval-union focal sets.

A model is a finite list of focal elements (disjoint unions of closed
intervals inside [-M, M]) with positive masses summing to one.  The induced
set function

    belief(A)       = sum of masses of focal elements contained in A
    plausibility(A) = sum of masses of focal elements meeting A

is always totally monotone because it comes from a mass function; the
enumeration check in :func:`total_monotonicity_check` exists for tests and
for externally supplied capacities that carry no such certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import GridTooLarge
from .intervals import IntervalEvent

MASS_SUM_TOL = 1e-12


@dataclass(frozen=True)
class FocalElement:
    """A nonempty finite union of closed intervals, sorted and disjoint.

    ``parts`` is a tuple of (a, b) pairs with a <= b; consecutive parts must
    satisfy b_i < a_{i+1} (touching parts are merged by :meth:`make`).
    """

    parts: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("focal element must be nonempty")
        prev_hi = -math.inf
        first = True
        for a, b in self.parts:
            if math.isnan(a) or math.isnan(b) or math.isinf(a) or math.isinf(b):
                raise ValueError("focal parts must have finite endpoints")
            if a > b:
                raise ValueError(f"focal part [{a}, {b}] has a > b")
            if not first and a <= prev_hi:
                raise ValueError("focal parts must be disjoint and strictly increasing")
            prev_hi = b
            first = False

    @staticmethod
    def make(parts: Iterable[Sequence[float]]) -> "FocalElement":
        """Build a focal element, sorting parts and merging touching ones."""
        norm = sorted((float(a), float(b)) for a, b in parts)
        merged: list[tuple[float, float]] = []
        for a, b in norm:
            if merged and a <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], b))
            else:
                merged.append((a, b))
        return FocalElement(tuple(merged))

    @property
    def min(self) -> float:
        return self.parts[0][0]

    @property
    def max(self) -> float:
        return self.parts[-1][1]

    def is_singleton(self) -> bool:
        return len(self.parts) == 1 and self.parts[0][0] == self.parts[0][1]

    def contained_in(self, event: IntervalEvent) -> bool:
        return all(event.contains_closed_interval(a, b) for a, b in self.parts)

    def intersects(self, event: IntervalEvent) -> bool:
        return any(event.intersects_closed_interval(a, b) for a, b in self.parts)


@dataclass(frozen=True)
class BeliefModel:
    """Marginal law of one coordinate: focal elements, masses, and bound M."""

    focal: tuple[tuple[FocalElement, float], ...]
    bound: float

    @staticmethod
    def make(focal: Iterable[tuple[FocalElement, float]], bound: float) -> "BeliefModel":
        return BeliefModel(tuple((f, float(m)) for f, m in focal), float(bound))

    def normalized(self) -> "BeliefModel":
        """Rescale masses to sum to exactly one (done once at model load).

        Idempotent: a residual of a few ulps after division is folded into
        the largest mass so the sum is exactly 1.0 and a second call is a
        no-op, which makes save/load round-trips bit-identical.
        """
        total = math.fsum(m for _, m in self.focal)
        if total <= 0 or total == 1.0:
            return self
        masses = [m / total for _, m in self.focal]
        top = max(range(len(masses)), key=masses.__getitem__)
        for _ in range(5):
            residual = 1.0 - math.fsum(masses)
            if residual == 0.0:
                break
            masses[top] += residual
        return BeliefModel(
            tuple((f, m) for (f, _), m in zip(self.focal, masses)), self.bound
        )

    def mass_sum(self) -> float:
        return math.fsum(m for _, m in self.focal)

    def is_additive(self) -> bool:
        """All focal elements are singletons, i.e. an ordinary discrete law."""
        return all(f.is_singleton() for f, _ in self.focal)

    def shifted(self, c: float) -> "BeliefModel":
        focal = tuple(
            (FocalElement(tuple((a + c, b + c) for a, b in f.parts)), m)
            for f, m in self.focal
        )
        return BeliefModel(focal, self.bound + abs(c))

    def scaled(self, s: float) -> "BeliefModel":
        if s <= 0:
            raise ValueError("scale factor must be positive")
        focal = tuple(
            (FocalElement(tuple((a * s, b * s) for a, b in f.parts)), m)
            for f, m in self.focal
        )
        return BeliefModel(focal, self.bound * s)

    def with_bound(self, bound: float) -> "BeliefModel":
        return BeliefModel(self.focal, float(bound))


@dataclass(frozen=True)
class Violation:
    """One violated structural invariant, with a machine-readable code."""

    code: str
    detail: str


def validate_model(model: BeliefModel) -> list[Violation]:
    """Check every structural invariant; an empty list certifies the model.

    Violations are data, not failures: all of them are collected and
    returned.  A model passing this check induces a belief measure (mass
    functions with nonnegative masses are always totally monotone).
    """
    out: list[Violation] = []
    if not model.focal:
        out.append(Violation("EmptyModel", "model has no focal elements"))
        return out
    if not (model.bound > 0) or math.isinf(model.bound):
        out.append(Violation("BoundViolation", f"M = {model.bound} is not a positive real"))
    for i, (f, m) in enumerate(model.focal):
        if not (m > 0):
            out.append(Violation("MassPositivity", f"focal #{i} has mass {m} <= 0"))
        if f.min < -model.bound or f.max > model.bound:
            out.append(
                Violation(
                    "BoundViolation",
                    f"focal #{i} spans [{f.min}, {f.max}] outside [-{model.bound}, {model.bound}]",
                )
            )
    total = model.mass_sum()
    if abs(total - 1.0) > MASS_SUM_TOL:
        out.append(Violation("MassSumViolation", f"masses sum to {total!r}"))
    return out


def belief(model: BeliefModel, event: IntervalEvent) -> float:
    """nu(event): total mass of focal elements contained in the event."""
    return math.fsum(m for f, m in model.focal if f.contained_in(event))


def plausibility(model: BeliefModel, event: IntervalEvent) -> float:
    """V(event) = 1 - nu(complement): mass of focal elements meeting the event.

    Computed by direct intersection, which equals the conjugate form exactly
    (a focal element misses the event iff it sits inside the complement).
    """
    return math.fsum(m for f, m in model.focal if f.intersects(event))


# -- total monotonicity enumeration check ----------------------------------


@dataclass(frozen=True)
class MonotonicityReport:
    """Outcome of the inclusion-exclusion enumeration check.

    On failure, ``witness_masks`` identifies the first violating family as
    event bitmasks over the cell algebra; ``witness`` carries the same family
    as interval events when the check ran against a model.
    """

    passed: bool
    witness_masks: tuple[int, ...] | None = None
    witness: tuple[IntervalEvent, ...] | None = None
    lhs: float | None = None
    rhs: float | None = None


def grid_cells(grid: Sequence[float]) -> list[IntervalEvent]:
    """Partition the line into cells induced by distinct grid points.

    Points g1 < ... < gm yield cells (-inf, g1), [g1, g2), ..., [gm, +inf).
    """
    pts = sorted(set(float(g) for g in grid))
    if not pts:
        return [IntervalEvent.real_line()]
    cells = [IntervalEvent.less_than(pts[0])]
    for a, b in zip(pts, pts[1:]):
        cells.append(IntervalEvent.interval(a, b, lo_closed=True, hi_closed=False))
    cells.append(IntervalEvent.at_least(pts[-1]))
    return cells


def _family_count(n_events: int, order: int) -> int:
    total = 0
    for k in range(2, order + 1):
        total += math.comb(n_events, k)
    return total


def check_capacity_monotonicity(
    capacity: Callable[[int], float],
    n_cells: int,
    order: int = 2,
    max_families: int = 2_000_000,
    tol: float = 1e-12,
) -> MonotonicityReport:
    """Exhaustively check order-2/3 inclusion-exclusion over a cell algebra.

    ``capacity`` maps an event bitmask (bit i set = cell i included) to its
    value.  This is the test hook: any set function can be injected, not just
    beliefs of a model.  Families with repeated events reduce to lower-order
    inequalities and are skipped.
    """
    if order not in (2, 3):
        raise ValueError("order must be 2 or 3")
    n_events = 1 << n_cells
    if n_events > 4096 or _family_count(n_events, order) > max_families:
        raise GridTooLarge(
            f"{n_cells} cells induce {n_events} events "
            f"({_family_count(n_events, order)} families at order {order})"
        )
    values = [capacity(mask) for mask in range(n_events)]
    masks = range(n_events)

    for k in range(2, order + 1):
        for family in combinations(masks, k):
            union = 0
            for m in family:
                union |= m
            lhs = values[union]
            rhs = 0.0
            for j in range(1, k + 1):
                sign = 1.0 if j % 2 == 1 else -1.0
                for sub in combinations(family, j):
                    inter = ~0
                    for m in sub:
                        inter &= m
                    rhs += sign * values[inter & (n_events - 1)]
            if lhs < rhs - tol:
                return MonotonicityReport(False, witness_masks=family, lhs=lhs, rhs=rhs)
    return MonotonicityReport(True)


def total_monotonicity_check(
    model: BeliefModel,
    grid: Sequence[float],
    order: int = 2,
    max_families: int = 2_000_000,
) -> MonotonicityReport:
    """Run the enumeration check on the belief induced by ``model``.

    Always passes for a valid model; exists to exercise the inequality and,
    via :func:`check_capacity_monotonicity`, to probe external capacities.
    """
    cells = grid_cells(grid)
    cache: dict[int, float] = {}

    def capacity(mask: int) -> float:
        if mask not in cache:
            ev = IntervalEvent.empty()
            for i, cell in enumerate(cells):
                if mask & (1 << i):
                    ev = ev.union(cell)
            cache[mask] = belief(model, ev)
        return cache[mask]

    report = check_capacity_monotonicity(capacity, len(cells), order, max_families)
    if report.witness_masks is None:
        return report
    witness = tuple(_mask_to_event(m, cells) for m in report.witness_masks)
    return MonotonicityReport(
        report.passed, witness_masks=report.witness_masks, witness=witness,
        lhs=report.lhs, rhs=report.rhs,
    )


def _mask_to_event(mask: int, cells: Sequence[IntervalEvent]) -> IntervalEvent:
    ev = IntervalEvent.empty()
    for i, cell in enumerate(cells):
        if mask & (1 << i):
            ev = ev.union(cell)
    return ev
