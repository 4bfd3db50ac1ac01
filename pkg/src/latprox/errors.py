"""Error types shared across the package."""


class LatproxError(Exception):
    """Base class for all package errors."""


class RankDeficient(LatproxError):
    """A matrix that must have full column rank does not."""


class NotUnimodular(LatproxError):
    """An integer transform whose determinant is not +-1."""


class BudgetExceeded(LatproxError):
    """An enumeration walked more nodes than the caller allowed."""


class NonTermination(LatproxError):
    """A reduction loop stopped making progress (numerical breakdown)."""


class DimensionTooLarge(LatproxError):
    """An exact search was requested above the supported dimension cap."""


class NonPositiveSigma(LatproxError):
    """A noise standard deviation that must be positive is not."""


class BoundViolation(LatproxError):
    """An empirical proximity ratio exceeded its proven bound."""


class ConfigInvalid(LatproxError):
    """A configuration object failed validation."""


class UnknownMethod(LatproxError):
    """An unrecognized method/detector/side tag."""
