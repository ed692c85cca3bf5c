"""Exception types shared across the library."""


class CapaxError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(CapaxError, ValueError):
    """Dimension argument out of range."""


class ProfileError(CapaxError, ValueError):
    """Warping-profile description cannot be parsed or validated."""


class ConvexityError(ProfileError):
    """Profile violates the convexity requirement phi'' >= 0."""


class HorizonError(CapaxError, ValueError):
    """Evaluation requested beyond a profile's validity horizon t_max."""


class DomainError(CapaxError, ValueError):
    """Scalar argument outside the operation's domain."""


class DivergentCondenserError(CapaxError, ValueError):
    """Condenser whose energy integral diverges (inner radius 0 with p <= n)."""


class DivergentTailError(CapaxError, ValueError):
    """Unbounded-domain integral does not converge for the given exponents."""


class DivergenceError(CapaxError, ValueError):
    """A requested norm or energy integral is infinite."""


class RegimeError(CapaxError, ValueError):
    """Exponent regime incompatible with the requested quantity."""


class HypothesisError(CapaxError, ValueError):
    """Parameters violate the hypothesis of the requested inequality check."""


class AccuracyError(CapaxError, RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance.

    Carries the best available value and the achieved error estimate.
    """

    def __init__(self, message, value=None, estimate=None):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


class ConvergenceError(CapaxError, RuntimeError):
    """Iterative minimization failed to converge; carries a trace summary."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = dict(trace or {})
