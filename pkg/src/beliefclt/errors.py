"""Exception types shared across the package."""

from __future__ import annotations


class BeliefCltError(Exception):
    """Base class for all package-specific errors."""


class ParseError(BeliefCltError):
    """A model or plan file violates the documented grammar.

    Carries the offending file path and 1-based line number.
    """

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ValidationError(BeliefCltError):
    """A parsed model failed structural validation.

    ``violations`` holds the full list of :class:`~beliefclt.belief.Violation`
    records found by ``validate_model``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        codes = ", ".join(v.code for v in self.violations)
        super().__init__(f"model validation failed: {codes}")


class DegenerateVariance(BeliefCltError):
    """The min- or max-statistic has (numerically) zero variance.

    The normalized statistics divide by sigma*sqrt(n), so no limit theorem
    quantity can be formed.  ``partial`` carries the moment fields that are
    still well defined (means, cross moment, rho') with ``rho`` set to NaN.
    """

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


class GridTooLarge(BeliefCltError):
    """The event algebra induced by a grid exceeds the enumeration budget."""


class InvalidProbabilities(BeliefCltError):
    """Probability arguments violate their required ordering or range."""
