"""Exception hierarchy shared by all modules."""


class CatliftError(Exception):
    """Base class for every error raised by catlift."""


class ConstructionError(CatliftError):
    """Malformed input to a constructor (bad names, unknown endpoints...)."""


class PreconditionError(CatliftError):
    """An operation was called outside its domain; ``witness`` says where."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeLimitExceeded(CatliftError):
    """A brute-force search would exceed the configured size guard."""


class NotFound(PreconditionError):
    """No solution exists where exactly one was expected."""


class NonUnique(PreconditionError):
    """Several solutions exist where exactly one was expected."""
