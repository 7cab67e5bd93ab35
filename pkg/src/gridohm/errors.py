"""Exception hierarchy shared by all gridohm modules."""


class GridohmError(Exception):
    """Base class for every error raised by gridohm."""


class InvalidSpecError(GridohmError, ValueError):
    pass


class CapacityError(GridohmError):
    """Requested problem size exceeds an index type or a compute budget."""


class VertexRangeError(GridohmError, IndexError):
    pass


class DimensionError(GridohmError, ValueError):
    pass


class ConnectivityError(GridohmError):
    pass


class DegeneracyError(GridohmError):
    pass


class ConvergenceError(GridohmError):
    """Iterative solver stopped before reaching the residual tolerance."""

    def __init__(self, message, residual, iterations):
        super().__init__(f"{message} (relative residual {residual:.3e} after {iterations} iterations)")
        self.residual = residual
        self.iterations = iterations


class SingularityError(GridohmError, ZeroDivisionError):
    pass


class DivergenceError(GridohmError):
    """The lattice integral diverges in dimension d < 3."""


class CrossValidationError(GridohmError):
    pass


class EstimationError(GridohmError):
    """Every Monte Carlo replicate hit the step cap."""


class CappedWalkWarning(UserWarning):
    pass
