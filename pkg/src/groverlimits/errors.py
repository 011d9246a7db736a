"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class RegimeError(DomainError):
    """A formula was evaluated outside the regime where it is meaningful."""


class ConfigurationError(ValueError):
    """A sweep or CLI configuration is invalid or exceeds a resource budget."""


class ProbabilityError(ArithmeticError):
    """A computed probability exceeded 1 by more than rounding can explain."""
