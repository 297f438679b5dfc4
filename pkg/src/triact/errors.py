"""Exception hierarchy."""


class TriactError(Exception):
    """Base class for all library errors."""


class ParameterError(TriactError, ValueError):
    """A family, functor or command received an out-of-range parameter."""


class InvalidTokenError(TriactError, ValueError):
    """A vertex token does not name a vertex of the generator."""


class BudgetExceededError(TriactError):
    """A ball, block or search grew past its configured limit."""


class PreconditionError(TriactError):
    """An operation was applied to a graph that does not meet its input contract."""


class UnsupportedError(TriactError):
    """The requested feature does not exist for this graph (e.g. no declared line)."""


class ColoringMismatchError(TriactError):
    """A coloring recovered from automorphisms disagrees with the declared one."""


class ContractionError(TriactError):
    """A quotient could not be formed consistently."""
