"""Exception types shared across the package."""

from __future__ import annotations


class ReprolintError(Exception):
    """Base class for all errors raised by this package."""


class EmptyReportError(ReprolintError):
    """Raised when a bug report has no textual content."""


class AppModelError(ReprolintError):
    """Raised when an app-model document is malformed or inconsistent."""


class IllegalEventError(ReprolintError):
    """Raised when an event targets a disabled, absent or incompatible component."""


class ForeignCheckpointError(ReprolintError):
    """Raised when restoring a checkpoint captured from a different session."""


class NoPathError(ReprolintError):
    """Raised when no path exists between two graph vertices."""


class DivergenceError(ReprolintError):
    """Raised when simulated execution lands on a screen the graph did not predict."""


class ConfigError(ReprolintError):
    """Raised when a configuration document or value is invalid."""


class LabelFileError(ReprolintError):
    """Raised when a sidecar label file does not line up with the report."""
