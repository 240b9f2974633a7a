"""Exception types raised by noncompact-kernels."""


class NoncompactKernelsError(ValueError):
    """Base class for all package errors."""


class DimensionMismatchError(NoncompactKernelsError):
    """Arrays or points of incompatible dimension were combined."""


class InvalidPointError(NoncompactKernelsError):
    """A point does not lie on its manifold."""


class InvalidGroupElementError(NoncompactKernelsError):
    """A matrix violates the invariants of its group."""


class SingularMatrixError(NoncompactKernelsError):
    """A decomposition was asked for a singular matrix."""


class SpaceMismatchError(NoncompactKernelsError):
    """A point or basis belongs to a different space than expected."""


class UnsupportedError(NoncompactKernelsError):
    """The requested combination of space, kernel and method is not available."""


class SamplerError(NoncompactKernelsError):
    """A sampler received invalid parameters or exhausted its iteration cap."""


class QuadratureError(NoncompactKernelsError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class FactorizationError(NoncompactKernelsError):
    """A Cholesky factorization failed even at the largest jitter level."""
