"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """Raised for malformed inputs (odd ring sizes, bad indices, wrong popcount, ...)."""


class SizeLimitError(ValueError):
    """Raised when a request exceeds the desk-scale limits (N > 24, dense dim > 4096)."""


class UnsupportedRegimeError(ValueError):
    """Raised when an analytic construction is requested outside its domain of validity."""


class DegenerateStateError(RuntimeError):
    """Raised when a derivative is requested at a (suspected) degenerate ground state."""


class ConvergenceError(RuntimeError):
    """Lanczos did not reach the requested residual.

    The best available estimate is attached as ``best`` (a GroundStateResult).
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
