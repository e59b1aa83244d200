"""Exception types shared across the package."""


class SpinPortraitError(Exception):
    """Base class for all package errors."""


class DomainError(SpinPortraitError, ValueError):
    """An argument lies outside the operation's domain."""


class ConfigError(SpinPortraitError, ValueError):
    """A configuration value is inconsistent or insufficient."""


class InvariantError(SpinPortraitError, ValueError):
    """A value violates a structural invariant (trace, hermiticity, normalization)."""


class FeasibilityError(SpinPortraitError, ValueError):
    """The measurement frames cannot support reconstruction."""


class DegeneratePriorError(DomainError):
    """A rotation carries zero prior probability and cannot be renormalized."""


class OptimizationError(SpinPortraitError, RuntimeError):
    """Every optimizer restart failed to locate a feasible configuration."""
