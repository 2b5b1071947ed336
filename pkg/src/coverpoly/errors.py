"""Exception types shared across the package."""


class CoverpolyError(Exception):
    """Base class for all errors raised by coverpoly."""


class InputError(CoverpolyError):
    """Malformed graph, monomial, decomposition or order input."""


class StructuralViolation(CoverpolyError):
    """An input violates a structural assumption (cactus, basic 5-cycle, ...)."""


class BudgetExceeded(CoverpolyError):
    """An enumeration would exceed one of the fixed desk-scale budgets."""
