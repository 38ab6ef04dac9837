"""Exception hierarchy.

Every domain failure derives from :class:`ShatteringError` so the CLI can
map them onto a single exit code.
"""


class ShatteringError(Exception):
    """Base class for all domain errors raised by this package."""


class NonRealResult(ShatteringError, ValueError):
    """Inverse transform left an imaginary residue above tolerance."""


class InvalidSparsity(ShatteringError, ValueError):
    pass


class NotCoprime(ShatteringError, ValueError):
    """Permutation parameter shares a factor with the signal length."""


class BadBankShape(ShatteringError, ValueError):
    pass


class LengthMismatch(ShatteringError, ValueError):
    pass


class ShatterCollision(ShatteringError, ValueError):
    """A filter captured more than one frequency."""


class NoValidSigma(ShatteringError, ValueError):
    pass


class OffGridAngle(ShatteringError, ValueError):
    """Measurement angle does not sit on the sensing grid."""


class NoConvergence(ShatteringError, RuntimeError):
    pass


class BadDimensions(ShatteringError, ValueError):
    pass
