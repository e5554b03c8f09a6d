"""Exception types shared across the package."""


class SpecError(ValueError):
    """Malformed body/model specification or invalid configuration."""


class OutsideDomainError(ValueError):
    """A point lies outside the body, tube, or center where it is required."""


class ConvergenceError(RuntimeError):
    """An iterative routine (bisection, extrapolation, sampling) failed to settle."""
