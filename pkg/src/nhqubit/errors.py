"""Exception hierarchy shared across the package."""


class NhQubitError(Exception):
    """Base class for all package-specific errors."""


class DomainError(NhQubitError):
    """Argument outside the mathematical domain of an operation."""


class DegenerateNonDiagonalizable(NhQubitError):
    """Matrix is defective within tolerance (exceptional point)."""


class NonPhysicalState(NhQubitError):
    """Density matrix violates trace/Hermiticity/positivity invariants."""


class QuadratureDivergence(NhQubitError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class BrokenPhase(NhQubitError):
    """Parameters lie in the broken-symmetry regime (complex splitting)."""


class GridTooCoarse(NhQubitError):
    """Finite-difference stencil unavailable on the given time grid."""


class AngleSingularity(NhQubitError):
    """Speed-limit velocity undefined where the Bures angle is 0 or pi/2."""


class DegenerateTrajectory(NhQubitError):
    """Trajectory shows no motion over the requested horizon."""


class GridMismatch(NhQubitError):
    """Two scenarios do not share the same time grid."""


class ConfigError(NhQubitError):
    """Scenario configuration could not be parsed or validated."""
