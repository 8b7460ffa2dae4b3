"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An operation was called with arguments outside its contract."""


class LoadError(ValueError):
    """A file or JSON payload failed validation; carries a location hint."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class SolverError(RuntimeError):
    """The degree-by-degree associator solve hit an inconsistent system.

    This must never happen for the pentagon/hexagon system; it is raised as
    a bug signal rather than swallowed.
    """
