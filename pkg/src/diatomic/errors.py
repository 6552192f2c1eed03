"""Exception types shared by the solvers and the command-line front end."""


class DiatomicError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DiatomicError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(DiatomicError, RuntimeError):
    """A numerical procedure failed to meet its accuracy target.

    Attributes
    ----------
    estimate : float
        Last available error estimate.
    """

    def __init__(self, message, estimate=float("nan")):
        super().__init__(message)
        self.estimate = estimate


class WindowTooSmallError(ConvergenceError):
    """Field mass reached the edge of the truncated lattice."""

    def __init__(self, message, z, edge_mass):
        super().__init__(message, estimate=edge_mass)
        self.z = z
        self.edge_mass = edge_mass


class CsvFormatError(DiatomicError, ValueError):
    """A CSV input does not follow the ``z,n,re,im,intensity`` schema."""

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class RegimeWarning(UserWarning):
    """Parameters lie outside the regime where an approximation is trusted."""
