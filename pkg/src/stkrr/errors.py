"""Exception types raised across the package."""


class DomainError(ValueError):
    """A point lies outside the kernel's declared domain."""


class RankError(ValueError):
    """Truncation level keeps an eigenvalue that is numerically zero."""


class NumericError(ArithmeticError):
    """Eigendecomposition failed or produced a clearly indefinite spectrum."""


class DegenerateSpectrumError(ValueError):
    """The spectrum is identically zero, so the requested quantity is undefined."""


class PreconditionError(ValueError):
    """A bound or comparison was requested outside the range where it holds."""
