"""Exception types shared across the package."""


class SubmodBanditError(Exception):
    """Base class for all package-specific errors."""


class OutOfRange(SubmodBanditError):
    """An item index lies outside the ground set [0, n)."""


class CardinalityExceeded(SubmodBanditError):
    """A set is larger than the cardinality the function is defined for."""


class GroundSetTooLarge(SubmodBanditError):
    """Exhaustive operations are capped at n <= 24."""


class NegativeSigma(SubmodBanditError):
    """Noise standard deviation must be nonnegative."""


class ZeroSigma(SubmodBanditError):
    """Divergence computations require strictly positive sigma."""


class InvalidStopLevel(SubmodBanditError):
    """Greedy stop level must lie in [0, k]."""


class TooManyArms(SubmodBanditError):
    """The flat index policy refuses arm sets larger than 10**6."""


class CheckpointOutOfRange(SubmodBanditError):
    """A requested checkpoint exceeds the trajectory length."""


class PreconditionViolated(SubmodBanditError):
    """Inputs violate the stated domain of a closed-form evaluator."""


class ConfigError(SubmodBanditError):
    """An experiment configuration failed validation."""
