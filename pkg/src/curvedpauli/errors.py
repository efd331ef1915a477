"""Exception hierarchy for the curvedpauli package."""


class CurvedPauliError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CurvedPauliError):
    """A coordinate, argument, or quantum number lies outside its valid domain."""


class SingularityError(DomainError):
    """Evaluation was requested at a genuine singular point of the equations."""


class PoleError(CurvedPauliError):
    """The hypergeometric series hits a pole of 1/(c)_k before terminating."""


class GridError(CurvedPauliError):
    """A verification grid is unusable (stencil exits the domain, empty, unordered)."""


class QuadratureError(CurvedPauliError):
    """Quadrature failed its convergence check."""


class ConvergenceError(CurvedPauliError):
    """An iterative or grid-refined computation failed its convergence check."""


class NotQuantizedError(CurvedPauliError):
    """A discrete spectrum was requested for a model that has none."""
