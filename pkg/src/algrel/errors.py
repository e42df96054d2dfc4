"""Exception hierarchy shared by the library and the command line."""


class AlgrelError(Exception):
    """Base class for all errors raised by :mod:`algrel`."""


class PreconditionError(AlgrelError, ValueError):
    """An argument violates an operation's precondition."""


class SchemaError(AlgrelError, ValueError):
    """A system definition does not match the expected file schema."""


class ResourceLimitError(AlgrelError):
    """A configured size guard refused the computation."""


class UnsupportedRouteError(AlgrelError):
    """The dual route was requested for a level where it is not admitted."""
