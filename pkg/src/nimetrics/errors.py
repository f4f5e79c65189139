"""Exception types shared across the package."""


class DegenerateTargetError(ValueError):
    """Raised when an operation needs a two-class target but H(T) = 0."""


class InfeasibleParameterError(ValueError):
    """Raised when index values cannot be realized by any confusion matrix
    with the given class sizes."""


class InvariantViolationError(AssertionError):
    """Raised by verification routines when a checked bound is exceeded."""
