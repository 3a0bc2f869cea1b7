"""Exception hierarchy shared by all modules."""


class HybridMimoError(Exception):
    """Base class for all package errors."""


class ConfigError(HybridMimoError):
    """Invalid system or scenario configuration."""


class DimensionMismatch(HybridMimoError):
    """Operands with incompatible shapes."""


class SingularMatrix(HybridMimoError):
    """Gram matrix rejected as singular or too ill-conditioned to invert."""


class NotHermitian(HybridMimoError):
    """Matrix violates the Hermitian symmetry tolerance."""


class NegativeEigenvalue(HybridMimoError):
    """Matrix has an eigenvalue below the PSD tolerance."""


class ZeroVector(HybridMimoError):
    """A vector that must be nonzero has (numerically) zero norm."""


class InvalidPathCount(ConfigError):
    """mmWave path count below 1."""


class UnsupportedK(HybridMimoError):
    """Closed form requires at least two users."""


class TargetInfeasible(HybridMimoError):
    """Requested rate target is outside the feasible range."""


class InvalidTarget(HybridMimoError):
    """Requested loss target is outside the valid range."""


class UnknownFigure(HybridMimoError):
    """No preset with the requested figure name."""


class DegenerateTrialsExceeded(HybridMimoError):
    """More than 0.1% of trials in a row hit a singular Gram matrix."""
