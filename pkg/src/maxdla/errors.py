"""Exception hierarchy shared by the library and the command line."""


class MaxDLAError(Exception):
    """Base class for every error raised by this package."""


class InputError(MaxDLAError, ValueError):
    """An instance, arrangement or argument violates a precondition."""


class SizeLimitError(MaxDLAError):
    """An exhaustive search or bounded-degree solver refused an instance."""

    def __init__(self, message: str, size: int, limit: int):
        super().__init__(message)
        self.size = size
        self.limit = limit


class VerificationError(MaxDLAError):
    """A produced certificate failed its independent re-check."""
