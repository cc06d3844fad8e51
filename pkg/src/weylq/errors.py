"""Exception hierarchy shared by every module.

The CLI maps these onto process exit codes, so library code must raise the
most specific class that applies.
"""

from __future__ import annotations


class WeylqError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(WeylqError):
    """Malformed or out-of-range input: bad rank, unknown root, bad subset."""


class DomainError(ValidationError):
    """Input is well formed but outside the domain where a result is asserted,
    for example a dilation below a removal threshold."""


class ResourceCapError(WeylqError):
    """A configured enumeration cap would be exceeded."""


class InconsistencyError(WeylqError):
    """An internal cross-check failed; results cannot be trusted."""
