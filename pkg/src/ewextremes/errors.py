"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ContractError(ValueError):
    """An operation was called on an object that violates its precondition."""


class ConvergenceError(RuntimeError):
    """An iterative routine failed to reach its stated tolerance."""
