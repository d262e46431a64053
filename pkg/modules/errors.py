"""
Exception hierarchy for the toolkit.
Every error is a ValueError so callers that only know about ValueError keep working.
"""


class PlaneCongError(ValueError):
    """Base class for all toolkit errors."""


class ConfigError(PlaneCongError):
    """A setting from the environment or .env file is malformed."""


class ModulusMismatchError(PlaneCongError):
    """Two operands carry different moduli."""


class SeriesIndexError(PlaneCongError, IndexError):
    """Coefficient index outside the retained order."""


class OracleLimitError(PlaneCongError):
    """An enumeration oracle was asked for a size above its configured cap."""


class PeriodError(PlaneCongError):
    """Window too short for a period check, or the claimed period does not hold."""


class TheoremScopeError(PlaneCongError):
    """Statement lies outside the finite-check theorem (needs k = m = stride = prime)."""


class UsageError(PlaneCongError):
    """Command-line usage error."""
