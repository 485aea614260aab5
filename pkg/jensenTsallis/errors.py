"""
Exception types raised by the toolkit.
"""
from typing import Optional


class JensenTsallisError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(JensenTsallisError, ValueError):
    """An argument lies outside the domain of a function (e.g. ln_q(x) with x <= 0)."""


class ArgumentError(JensenTsallisError, ValueError):
    """Arguments are inconsistent with each other (length or support mismatch)."""


class InvalidPhiError(JensenTsallisError, ValueError):
    """A phi function violates the sign or normalization conditions."""


class UsageError(JensenTsallisError):
    """Command-line arguments cannot be turned into a valid run."""


class HistogramParseError(JensenTsallisError):
    """A histogram source contains a malformed or negative record."""

    def __init__(self, message: str, source: str = "<stream>", line: Optional[int] = None):
        self.source = source
        self.line = line
        location = source if line is None else f"{source}:{line}"
        super().__init__(f"{location}: {message}")


class OptimizerConvergenceError(JensenTsallisError):
    """The simplex minimizer ran out of iterations; carries the best iterate found."""

    def __init__(self, message: str, best=None, objective: Optional[float] = None):
        self.best = best
        self.objective = objective
        super().__init__(message)


class OutputWriteError(JensenTsallisError):
    """A result file requested with --output could not be written."""
