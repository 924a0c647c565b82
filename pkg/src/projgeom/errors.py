"""Exception classes raised by :mod:`projgeom`."""


class ProjGeomError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(ProjGeomError, ValueError):
    """Raised when a matrix that must be self-adjoint is not."""


class Singular(ProjGeomError, ArithmeticError):
    """Raised when a matrix is numerically singular.

    The smallest singular value is kept on ``min_singular_value`` so that
    callers can report how far from invertible the input was.
    """

    def __init__(self, msg, min_singular_value=0.0):
        super().__init__(msg)
        self.min_singular_value = float(min_singular_value)


class SumNotInvertible(Singular):
    """Raised when ``p + q - 1`` is not invertible."""


class SumNotInjective(ProjGeomError, ValueError):
    """Raised when ``p + q - 1`` has a nontrivial kernel."""


class NormNotLessThanOne(ProjGeomError, ValueError):
    """Raised when two projections are at operator-norm distance >= 1."""


class NotInBall(NormNotLessThanOne):
    """Raised when a projection lies outside the chart domain of a basepoint."""


class NotInChart(NotInBall):
    """Raised when a projection is not covered by a standard chart."""


class NotInOverlap(NotInBall):
    """Raised when a chart point does not lie in the overlap of two charts."""


class BadRank(ProjGeomError, ValueError):
    pass


class RankMismatch(ProjGeomError, ValueError):
    pass


class NotOrthogonal(ProjGeomError, ValueError):
    pass


class FrameDeficient(ProjGeomError, ValueError):
    """Raised when a frame matrix is not left-invertible."""


class NotAProjection(ProjGeomError, ValueError):
    """Raised when a matrix fails the idempotent or Hermitian residual test."""


class CertificationError(ProjGeomError, ArithmeticError):
    """Raised when a constructed object fails its own residual certificate.

    This signals that the input was too close to a decision boundary for the
    result to be trusted at the configured tolerance.
    """


class FormatError(ProjGeomError, ValueError):
    """Raised when a serialized matrix or lattice element cannot be parsed."""
