"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the range an operation is defined on."""


class InsufficientTableError(ValueError):
    """A prime table does not reach far enough for the requested scan."""


class InfeasibleSystemError(ValueError):
    """A system of congruences has no common solution."""
