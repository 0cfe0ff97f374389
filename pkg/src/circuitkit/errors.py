"""Shared exception types."""


class EnumerationGuardError(ValueError):
    """An enumeration-based operation was asked to exceed its size guard."""


class NoSpecialStructureError(ValueError):
    """A point has no special line through it; dependency construction impossible."""


class GenericProjectionError(RuntimeError):
    """Random projection failed to preserve the line structure after retries."""


class InfeasibleError(ValueError):
    """LP or IP instance has no feasible point."""


class BoundViolationError(AssertionError):
    """A theorem-backed bound failed on an instance (would falsify the claim)."""
