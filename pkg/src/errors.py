"""
Exception hierarchy shared by every layer
"""


class QuadboundError(ValueError):
    """Base class for all library errors."""


class NonFiniteInput(QuadboundError):
    """An input operator contains NaN or Inf entries."""


class ConvergenceFailure(QuadboundError):
    """A LAPACK eigen/singular value routine did not converge."""


class DimensionMismatch(QuadboundError):
    pass


class LengthMismatch(QuadboundError):
    pass


class DegenerateInput(QuadboundError):
    """A normalizing operator vanished, so the construction is undefined."""


class NormalizationError(QuadboundError):
    pass


class ArityError(QuadboundError):
    pass


class NotPsd(QuadboundError):
    pass


class NotHermitian(QuadboundError):
    pass


class ParseError(QuadboundError):
    """Input text or JSON could not be decoded into a library object."""


class InvariantViolation(QuadboundError):
    """A computed report broke one of its own guaranteed inequalities."""
