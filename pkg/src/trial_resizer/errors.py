"""Exception hierarchy and input validation helpers shared across the package."""

from __future__ import annotations

import math


class TrialResizerError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class DomainError(TrialResizerError, ValueError):
    """An input violates a documented precondition."""

    code = "domain_error"

    def __init__(self, message: str, parameter: str | None = None):
        super().__init__(message)
        self.parameter = parameter


class InfeasibleError(DomainError):
    """The requested target cannot be reached for the given inputs."""

    code = "infeasible"


class NumericalError(TrialResizerError, RuntimeError):
    """A numerical routine failed to converge within its budget."""

    code = "numerical_error"

    def __init__(self, message: str, best_estimate: float | None = None):
        super().__init__(message)
        self.best_estimate = best_estimate


class DegenerateQuadraticError(DomainError):
    """The resize quadratic has a vanishing leading coefficient.

    Signals the caller to use the linear solution branch instead.
    """

    code = "degenerate_quadratic"


class StratumCollapseError(DomainError):
    """A short-term outcome stratum contains no complete records."""

    code = "stratum_collapse"


class CollinearityError(DomainError):
    """A working-model design matrix is rank deficient."""

    code = "collinear"


class CsvParseError(DomainError):
    """A dataset CSV row could not be parsed."""

    code = "csv_parse"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message, parameter="csv")
        self.line = line


def check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}", parameter=name)
    return value


def check_probability(name: str, value: float, *, open_interval: bool = False) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}", parameter=name)
    if open_interval:
        if not 0.0 < value < 1.0:
            raise DomainError(f"{name} must lie in (0, 1), got {value}", parameter=name)
    elif not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value}", parameter=name)
    return value


def check_correlation(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or abs(value) > 1.0:
        raise DomainError(f"{name} must lie in [-1, 1], got {value}", parameter=name)
    return value


def check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value}", parameter=name)
    return value


def check_fraction(name: str, value: float, *, include_one: bool = True) -> float:
    """Validate an information fraction in (0, 1] (or (0, 1) if include_one=False)."""
    value = float(value)
    upper_ok = value <= 1.0 if include_one else value < 1.0
    if not math.isfinite(value) or not (0.0 < value and upper_ok):
        limit = "(0, 1]" if include_one else "(0, 1)"
        raise DomainError(f"{name} must lie in {limit}, got {value}", parameter=name)
    return value
