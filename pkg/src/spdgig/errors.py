"""Exception types shared across the package."""


class SpdGigError(Exception):
    """Base class for all package errors."""


class DimMismatch(SpdGigError):
    """Operands have incompatible matrix dimensions."""


class NotPositiveDefinite(SpdGigError):
    """A matrix required to lie in the SPD cone fails the Cholesky test."""


class IllConditioned(SpdGigError):
    """Condition number exceeds the active guard."""


class SymmetryLoss(SpdGigError):
    """A result that must be symmetric deviates beyond tolerance."""


class DomainError(SpdGigError):
    """Scalar argument outside the admissible domain."""


class InvalidLambda(SpdGigError):
    """Wishart shape parameter outside the admissible set."""


class TooFewSamples(SpdGigError):
    """Statistical test invoked with an inadequate sample size."""


class ConfigError(SpdGigError):
    """Malformed CLI or campaign configuration."""
