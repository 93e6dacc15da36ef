"""Exception hierarchy shared by all hyperball modules."""


class HyperballError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HyperballError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConvergenceError(HyperballError, RuntimeError):
    """An iterative routine exhausted its budget or failed a residual check."""


class CapacityError(HyperballError):
    """A particle-number request exceeds the states available under the cutoff."""


class CutoffError(HyperballError):
    """The spectrum cutoff e_max is inadequate for the requested computation."""
