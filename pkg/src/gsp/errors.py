"""Exception types shared across the package."""


class GSPError(Exception):
    """Base class for all errors raised by :mod:`gsp`."""


class DimensionError(GSPError, ValueError):
    """Vectors or vector sets have incompatible shapes."""


class ParamError(GSPError, ValueError):
    """An angle or distance parameter lies outside its admissible range.

    ``bound`` carries the sharp limit that was violated, when there is one.
    """

    def __init__(self, message, value=None, bound=None):
        super().__init__(message)
        self.value = value
        self.bound = bound


class DependentInputError(GSPError, ValueError):
    """The input vectors are not numerically linearly independent.

    ``index`` is the 1-based position of the first vector whose residual,
    after projection onto its predecessors, fell below tolerance.
    """

    def __init__(self, index, residual=None):
        msg = f"vector {index} is numerically dependent on its predecessors"
        if residual is not None:
            msg += f" (residual norm {residual:.3e})"
        super().__init__(msg)
        self.index = index
        self.residual = residual
