"""Exception types shared across the package."""


class PhaseTomoError(ValueError):
    """Base class for all domain/numerical errors raised by this package."""


class DomainError(PhaseTomoError):
    """Argument outside the mathematical domain of an operation."""


class DivergenceError(PhaseTomoError):
    """A closed-form integral does not converge for the given parameters."""


class DeltaLimitError(PhaseTomoError):
    """Kernel requested at t = 0, where it degenerates to a delta function."""


class SingularTimeError(PhaseTomoError):
    """Gaussian propagation hit a non-normalizable intermediate parameter."""


class TruncationError(PhaseTomoError):
    """State has not decayed at the grid boundary; result would be truncated."""


class WindowError(PhaseTomoError):
    """Too much mass leaves the computational window."""


class ResolutionError(PhaseTomoError):
    """Grid or step size too coarse to resolve the integrand/phase."""


class NonConvergenceError(PhaseTomoError):
    """Regularized quadrature did not settle within the requested spread."""
