"""Exception hierarchy shared by the whole package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""


class QigError(Exception):
    """Base class for all package errors."""


class UsageError(QigError):
    """Command line or config document misuse (unknown flag, missing field)."""


class ValidationError(QigError):
    """Malformed or inconsistent input (shapes, invariants, schemas)."""


class DomainError(ValidationError):
    """Argument outside the mathematical domain of an operation."""


class NotAStateError(ValidationError):
    """Matrix fails a state requirement (trace, positivity) beyond tolerance."""


class NumericalError(QigError):
    """An iterative numerical routine failed to converge."""
