"""Exception types shared across the toolkit."""


class MissingRepresentationError(ValueError):
    """An operation needs a vertex or halfspace representation the polytope lacks."""


class UnsupportedInstanceError(ValueError):
    """The input is outside the supported class (e.g. asymmetric vertex-only gauge)."""


class ConsistencyError(RuntimeError):
    """An internal invariant that should hold by construction was violated."""


class SolverFailureError(RuntimeError):
    """The LP solver hit its iteration cap without reaching a verdict."""


class ConvergenceFailureError(RuntimeError):
    """An iterative method exhausted its iteration budget; carries the residual."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual
