"""Exception types shared across the package."""


class WeilformsError(Exception):
    """Base class for all library errors."""


class DomainError(WeilformsError):
    """An input violates a documented precondition."""


class InvalidIndexError(DomainError):
    """Invalid Jacobi index or block data (M, B); the message names the violated condition."""


class ParseError(WeilformsError):
    """Malformed serialized input; the message points at the offending location."""


class MismatchError(WeilformsError):
    """Two coefficient keys that must agree carry different values."""


class InternalError(WeilformsError):
    """An internal consistency check failed; this signals a library bug, not bad input."""


class NotRepresentableError(DomainError):
    """No primitive vector of the requested norm exists."""
