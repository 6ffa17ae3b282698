"""Model and plan file parsing, serialization, and CSV emission.

Both file kinds use a line-based key-value grammar chosen for diff-friendly
test fixtures.  Comments start with ``#`` and run to end of line; blank
lines are ignored.  Floats are serialized with 17 significant digits, which
round-trips IEEE doubles exactly.

Model file::

    model   = "M" "=" float { focal } ;
    focal   = "focal" "=" "{" "parts" "=" list-of-pairs ","
                           "mass" "=" float "}" ;

``parts`` is a list like ``[[0, 1], [2.5, 3]]``.  Touching or overlapping
intervals inside one focal element are merged silently; distinct focal
elements may overlap freely.  Masses are renormalized exactly once at load
when their sum differs from 1 by at most LOAD_MASS_TOL; a larger gap is a
modeling error and raises ValidationError.

Plan file::

    plan    = { assignment } ;
    keys    : model (path, resolved relative to the plan file),
              n_values, reps, seed, alpha_one_sided, alpha_two_sided, slack.

Unknown keys are rejected.
"""

from __future__ import annotations

import ast
import csv
import io
import re
from pathlib import Path
from typing import Any, Iterable, Sequence

from .belief import BeliefModel, FocalElement, validate_model
from .errors import ParseError, ValidationError
from .montecarlo import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_N_VALUES,
    DEFAULT_REPS,
    SimPlan,
    default_alpha_pairs,
)

LOAD_MASS_TOL = 1e-6

_FOCAL_RE = re.compile(
    r"^\{\s*parts\s*=\s*(?P<parts>\[.*\])\s*,\s*mass\s*=\s*(?P<mass>[^,\s}]+)\s*\}$"
)

PLAN_KEYS = ("model", "n_values", "reps", "seed",
             "alpha_one_sided", "alpha_two_sided", "slack")


def _logical_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _split_assignment(line: str, path: str, lineno: int) -> tuple[str, str]:
    if "=" not in line:
        raise ParseError(f"expected 'key = value', got {line!r}", path, lineno)
    key, value = line.split("=", 1)
    return key.strip(), value.strip()


def _literal(text: str, path: str, lineno: int) -> Any:
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError) as exc:
        raise ParseError(f"malformed value {text!r}: {exc}", path, lineno) from exc


def _parse_focal(value: str, path: str, lineno: int) -> tuple[FocalElement, float]:
    match = _FOCAL_RE.match(value)
    if match is None:
        raise ParseError(
            "focal block must look like "
            "'focal = { parts = [[a, b], ...], mass = m }'", path, lineno
        )
    parts = _literal(match.group("parts"), path, lineno)
    mass = _literal(match.group("mass"), path, lineno)
    if not isinstance(parts, list) or not parts or not all(
        isinstance(p, (list, tuple)) and len(p) == 2 for p in parts
    ):
        raise ParseError("parts must be a non-empty list of [a, b] pairs",
                         path, lineno)
    if not isinstance(mass, (int, float)) or isinstance(mass, bool):
        raise ParseError("mass must be a number", path, lineno)
    try:
        focal = FocalElement.make([(float(a), float(b)) for a, b in parts])
    except ValueError as exc:
        raise ParseError(str(exc), path, lineno) from exc
    return focal, float(mass)


def parse_model(text: str, path: str = "<string>") -> BeliefModel:
    bound: float | None = None
    bound_line: int | None = None
    focal: list[tuple[FocalElement, float]] = []
    for lineno, line in _logical_lines(text):
        key, value = _split_assignment(line, path, lineno)
        if key == "M":
            if bound is not None:
                raise ParseError(f"duplicate M (first on line {bound_line})",
                                 path, lineno)
            m = _literal(value, path, lineno)
            if not isinstance(m, (int, float)) or isinstance(m, bool):
                raise ParseError("M must be a number", path, lineno)
            bound, bound_line = float(m), lineno
        elif key == "focal":
            focal.append(_parse_focal(value, path, lineno))
        else:
            raise ParseError(f"unknown key {key!r} (expected M or focal)",
                             path, lineno)
    if bound is None:
        raise ParseError("missing 'M = <float>' line", path)
    if not focal:
        raise ParseError("model has no focal elements", path)
    total = sum(m for _, m in focal)
    model = BeliefModel.make(focal, bound)
    if abs(total - 1.0) <= LOAD_MASS_TOL:
        model = model.normalized()
    violations = validate_model(model)
    if violations:
        raise ValidationError(violations)
    return model


def load_model(path: str | Path) -> BeliefModel:
    """Parse and validate a model file; masses renormalized exactly once."""
    p = Path(path)
    return parse_model(p.read_text(), str(p))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def save_model(model: BeliefModel, path: str | Path) -> None:
    Path(path).write_text(model_text(model))


def model_text(model: BeliefModel) -> str:
    lines = [f"M = {_fmt(model.bound)}"]
    for f, m in model.focal:
        parts = ", ".join(f"[{_fmt(a)}, {_fmt(b)}]" for a, b in f.parts)
        lines.append(f"focal = {{ parts = [{parts}], mass = {_fmt(m)} }}")
    return "\n".join(lines) + "\n"


def parse_plan(text: str, path: str = "<string>",
               base_dir: str | Path | None = None) -> SimPlan:
    seen: dict[str, Any] = {}
    lines: dict[str, int] = {}
    for lineno, line in _logical_lines(text):
        key, value = _split_assignment(line, path, lineno)
        if key not in PLAN_KEYS:
            raise ParseError(
                f"unknown key {key!r} (known: {', '.join(PLAN_KEYS)})",
                path, lineno)
        if key in seen:
            raise ParseError(f"duplicate key {key!r} (first on line {lines[key]})",
                             path, lineno)
        lines[key] = lineno
        if key == "model":
            seen[key] = value
        else:
            seen[key] = _literal(value, path, lineno)
    if "model" not in seen:
        raise ParseError("plan must name a model file via 'model = <path>'", path)
    model_path = Path(seen["model"])
    if not model_path.is_absolute() and base_dir is not None:
        model_path = Path(base_dir) / model_path
    model = load_model(model_path)

    def _ints(key: str, default: Sequence[int]) -> tuple[int, ...]:
        v = seen.get(key, default)
        if not isinstance(v, (list, tuple)) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in v
        ):
            raise ParseError(f"{key} must be a list of integers", path, lines.get(key))
        return tuple(v)

    alphas = seen.get("alpha_one_sided", list(DEFAULT_ALPHA_GRID))
    if not isinstance(alphas, (list, tuple)):
        raise ParseError("alpha_one_sided must be a list of numbers",
                         path, lines.get("alpha_one_sided"))
    pairs_raw = seen.get("alpha_two_sided", default_alpha_pairs())
    if not isinstance(pairs_raw, (list, tuple)) or not all(
        isinstance(p, (list, tuple)) and len(p) == 2 for p in pairs_raw
    ):
        raise ParseError("alpha_two_sided must be a list of [a1, a2] pairs",
                         path, lines.get("alpha_two_sided"))
    try:
        return SimPlan(
            model=model,
            n_values=_ints("n_values", DEFAULT_N_VALUES),
            reps=int(seen.get("reps", DEFAULT_REPS)),
            seed=int(seen.get("seed", 0)),
            alpha_one_sided=tuple(float(a) for a in alphas),
            alpha_two_sided=tuple((float(a), float(b)) for a, b in pairs_raw),
            slack=float(seen.get("slack", 1.0)),
        )
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def load_plan(path: str | Path) -> SimPlan:
    """Parse a plan file; the model path resolves relative to the plan."""
    p = Path(path)
    return parse_plan(p.read_text(), str(p), base_dir=p.parent)


def plan_text(plan: SimPlan, model_path: str) -> str:
    if isinstance(plan.alpha_one_sided, dict) or isinstance(plan.alpha_two_sided, dict):
        raise ValueError("per-n alpha grids have no file representation")
    lines = [
        f"model = {model_path}",
        f"n_values = [{', '.join(str(n) for n in plan.n_values)}]",
        f"reps = {plan.reps}",
        f"seed = {plan.seed}",
        f"alpha_one_sided = [{', '.join(_fmt(a) for a in plan.alpha_one_sided)}]",
        "alpha_two_sided = ["
        + ", ".join(f"[{_fmt(a)}, {_fmt(b)}]" for a, b in plan.alpha_two_sided)
        + "]",
        f"slack = {_fmt(plan.slack)}",
    ]
    return "\n".join(lines) + "\n"


def save_plan(plan: SimPlan, path: str | Path, model_path: str | Path) -> None:
    """Write the plan and its model side by side.

    ``model_path`` is where the model file is written; the plan references
    it by its name, so the pair stays relocatable as a unit.
    """
    model_path = Path(model_path)
    save_model(plan.model, model_path)
    Path(path).write_text(plan_text(plan, model_path.name))


SIM_SCHEMA = ("run_id", "n", "event_kind", "alpha1", "alpha2",
              "frequency", "reps", "se", "seed")
REPORT_SCHEMA = ("experiment", "n", "alpha1", "alpha2", "theory",
                 "empirical", "deviation", "se", "pass")


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _fmt(value)
    return str(value)


def csv_text(rows: Iterable[Sequence[Any]], schema: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(schema)
    for row in rows:
        if len(row) != len(schema):
            raise ValueError(
                f"row has {len(row)} fields, schema has {len(schema)}")
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def emit_csv(rows: Iterable[Sequence[Any]], schema: Sequence[str],
             path: str | Path) -> None:
    """Write rows as RFC-4180 CSV with LF endings and a header row."""
    Path(path).write_text(csv_text(rows, schema), newline="")


def sim_rows(sim) -> list[tuple]:
    return [
        (sim.run_id, r.n, r.kind, r.alpha1, r.alpha2, r.frequency, r.reps,
         r.se, sim.seed)
        for r in sim.rows
    ]


def report_rows(report) -> list[tuple]:
    return [
        (r.experiment, r.n, r.alpha1, r.alpha2, r.theory, r.empirical,
         r.deviation, r.se, r.passed)
        for r in report.rows
    ]
