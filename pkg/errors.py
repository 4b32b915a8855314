"""Exceptions raised by the numerical kernels.

Every error carries a human readable message; the CLI prints it and exits 1,
the HTTP layer turns it into an ``HTTPException``.
"""


class RelaxationError(Exception):
    """Root of every error raised by this project."""


class DomainError(RelaxationError, ValueError):
    """Parameters outside the domain where an operation is defined."""


class CatastrophicCancellation(RelaxationError):
    """Series terms grew so large that rounding swamps the requested tolerance."""


class DivergentRegime(RelaxationError):
    """The asymptotic expansion is used where its first term is not small."""


class QuadratureFailure(RelaxationError):
    """Adaptive quadrature could not meet its tolerance within its budget."""


class AccuracyUnreachable(RelaxationError):
    """No evaluation algorithm reached the requested tolerance."""


class GridTooCoarse(RelaxationError):
    """Discretization error estimate stayed above the tolerance."""


class TailUnbounded(RelaxationError):
    """A Laplace integrand does not decay on the probe horizon."""


class UnsupportedOrder(RelaxationError):
    """The closed form needs p = 1/m with m an even integer."""


class SingularSystem(RelaxationError):
    """An implicit time step would divide by a non-positive weight."""
