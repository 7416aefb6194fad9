"""Exception hierarchy shared by all modules."""


class TwistedCCError(Exception):
    """Base class for every error raised by the package."""


class InvalidArgumentError(TwistedCCError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateConfigurationError(TwistedCCError, ValueError):
    """Two bodies coincide, or a kernel denominator vanishes."""


class BracketError(TwistedCCError, ValueError):
    """The target function does not change sign across the bracket."""


class ConvergenceError(TwistedCCError, RuntimeError):
    """An iterative solver ran out of iterations or bracket room."""


class NoSolutionError(TwistedCCError):
    """The reduced relations admit no root for the requested parameters."""


class NoPhysicalSolutionError(NoSolutionError):
    """A root exists but the recovered mass ratio is not positive."""
