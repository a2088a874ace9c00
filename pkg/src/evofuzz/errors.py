"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class DegenerateSetError(DomainError):
    """A fuzzy set is empty or all-zero where a usable one is required."""


class GridMismatchError(DomainError):
    """Two fuzzy sets live on different universe grids."""


class IngestionError(ValueError):
    """A data file could not be parsed."""


class SingularUpdateError(ArithmeticError):
    """A recursive least-squares update hit a singular denominator."""
