"""Exception types raised across the toolkit."""


class CorrDetError(Exception):
    """Base class for every error raised by corrdet."""


class NonConvergence(CorrDetError):
    pass


class EmptyVector(CorrDetError, ValueError):
    pass


class OutOfRange(CorrDetError, IndexError):
    pass


class LengthMismatch(CorrDetError, ValueError):
    pass


class LengthTooSmall(CorrDetError, ValueError):
    pass


class InvalidExponent(CorrDetError, ValueError):
    pass


class InternalInconsistency(CorrDetError):
    """A property that the theory guarantees failed beyond tolerance."""


class DegenerateRow(CorrDetError):
    pass


class ValidationError(CorrDetError, ValueError):
    """Input matrix is not a valid correlation matrix."""


class DimensionTooSmall(ValidationError):
    pass


class NotUnitDiagonal(ValidationError):
    pass


class OffDiagonalOutOfRange(ValidationError):
    pass


class NotPositiveSemidefinite(ValidationError):
    def __init__(self, message, min_eigenvalue):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue
