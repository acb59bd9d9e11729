"""Exception hierarchy shared by every aginorm module."""


class AginormError(Exception):
    """Base class for all library errors."""


class InvalidMatrix(AginormError, ValueError):
    """Input is not a finite, square, two-dimensional array."""


class DimensionMismatch(AginormError, ValueError):
    pass


class NotHermitian(AginormError, ValueError):
    pass


class ConvergenceFailure(AginormError, ArithmeticError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InvalidSpec(AginormError, ValueError):
    """A NormSpec that cannot be evaluated (bad syntax, k > n, p < 1)."""


class SingularBase(AginormError, ArithmeticError):
    """Negative power requested of a singular or nearly singular matrix."""


class NegativeSpectrum(AginormError, ArithmeticError):
    """Eigenvalue below the roundoff clamp band of a PSD input."""


class EmptyGrid(AginormError, ValueError):
    pass


class BadOrder(AginormError, ValueError):
    """Compound order k outside 1..n."""


class SizeCap(AginormError, ValueError):
    pass


class InvalidParam(AginormError, ValueError):
    """Parameter outside a checker's admissible domain."""


class NumericalAnomaly(AginormError, ArithmeticError):
    """Non-finite intermediate or a quantity that should be non-negative is not."""


class IoFailure(AginormError, OSError):
    pass
