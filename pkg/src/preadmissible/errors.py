"""Exception hierarchy shared by every module of the package."""


class PreadmissibleError(Exception):
    """Base class; ``kind`` is the machine-readable tag the CLI reports."""

    kind = "error"


class MalformedInputError(PreadmissibleError, ValueError):
    kind = "input"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PreconditionError(PreadmissibleError, ValueError):
    kind = "precondition"


class ResourceLimitError(PreadmissibleError, RuntimeError):
    kind = "resource"
