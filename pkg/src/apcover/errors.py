"""Exception types shared by the solvers and the command line."""


class APCoverError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(APCoverError, ValueError):
    """An operation was called with arguments that violate its precondition."""


class InvalidDifferenceError(PreconditionError):
    """A progression difference was zero or negative where a positive one is required."""


class CapacityError(APCoverError, RuntimeError):
    """The instance exceeds a configured enumeration or table-size cap."""
