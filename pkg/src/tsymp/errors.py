"""Exception hierarchy shared by all tsymp modules."""


class TSympError(Exception):
    """Base class for library errors."""


class DomainError(TSympError, ValueError):
    """A tensor carries the wrong domain tag for the requested operation."""


class ShapeError(TSympError, ValueError):
    """Dimensions are incompatible or a square/even-size requirement fails."""


class NumericError(TSympError, ArithmeticError):
    """A numerical computation produced a result outside its contract."""


class PreconditionError(TSympError, ValueError):
    """An input violates a structural precondition (symmetry, realness, ...)."""

    def __init__(self, message, *, slice_index=None, residual=None):
        super().__init__(message)
        self.slice_index = slice_index
        self.residual = residual


class NotHermitianError(PreconditionError):
    pass


class NotRealError(PreconditionError):
    pass


class NotSymmetricError(PreconditionError):
    pass


class DefinitenessError(PreconditionError):
    """Matrix is not (Hermitian) positive-definite.

    ``smallest_eigenvalue`` carries the offending eigenvalue.
    """

    def __init__(self, message, *, smallest_eigenvalue=None, slice_index=None):
        super().__init__(message, slice_index=slice_index, residual=smallest_eigenvalue)
        self.smallest_eigenvalue = smallest_eigenvalue


class ConjugateSymmetryError(PreconditionError):
    pass
