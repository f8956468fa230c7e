"""Exception hierarchy for quadrature construction."""


class QuadratureError(Exception):
    """Base class for all gjquad errors."""


class NotFinite(QuadratureError):
    """An input was NaN or infinite."""


class DegreeOutOfRange(QuadratureError):
    """Degree n < 1."""


class ParameterOutOfRange(QuadratureError):
    """alpha or beta outside (-1, inf)."""


class DomainError(QuadratureError):
    """Argument outside the open domain of an operation."""


class StepOutOfRadius(QuadratureError):
    """Taylor step target at or beyond the convergence radius."""


class NoConvergence(QuadratureError):
    """An adaptive summation hit its term cap before converging."""


class MaxItersExceeded(QuadratureError):
    """A fixed-point iteration hit its iteration cap."""


class OmegaNonpositive(QuadratureError):
    """Sweep left the region where further zeros can exist.

    Signals end-of-sweep, not a failure.
    """


class DeltaNonpositive(QuadratureError):
    """Angular refinement cannot step (discriminant outside usable range)."""


class CountMismatch(QuadratureError):
    """Sweeps did not account for exactly n nodes."""


class SingularNormalization(QuadratureError):
    """Weight-normalization system is singular or near-singular."""


class EigenNoConvergence(QuadratureError):
    """Tridiagonal QL iteration failed to converge."""


class LengthMismatch(QuadratureError):
    """Rules of different lengths passed to a comparison."""
