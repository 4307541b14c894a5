"""Exception hierarchy shared by all modules."""


class KPlaneError(Exception):
    """Base class for every error raised by the package."""


class DomainError(KPlaneError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResolutionError(KPlaneError):
    """A grid or quadrature rule is too coarse for the requested oscillation."""


class TruncationError(KPlaneError):
    """A field does not decay at the edge of its computational box."""


class ConvergenceError(KPlaneError):
    """A truncated integral changed too much when the truncation was doubled."""


class EmptyIntersectionError(KPlaneError):
    """Two translated curves do not meet."""


class DegenerateContinuumError(KPlaneError):
    """Two translated curves coincide, so their intersection is a continuum."""


class NonTimelikeError(KPlaneError, ValueError):
    """A point expected inside the forward light cone is not."""


class WrongSheetError(KPlaneError, ValueError):
    """A point lies below the time axis, on the wrong sheet of the hyperboloid."""


class SingularKernelError(KPlaneError, ValueError):
    """A kernel was evaluated on its singular set."""


class ConfigError(KPlaneError):
    """An invalid command-line or run configuration."""
