"""Exception hierarchy shared by the index, the oracle and the CLI."""


class DrIndexError(Exception):
    """Base class for every error raised by drindex."""

    pass


class RangeError(DrIndexError, IndexError):
    """Raised when a position, index or length falls outside its valid range."""

    pass


class PreconditionError(DrIndexError, ValueError):
    """Raised when an operation is called in a state it does not support."""

    pass


class ArgumentError(DrIndexError, ValueError):
    """Raised when user-supplied input is rejected."""

    pass


class InvariantViolation(DrIndexError, RuntimeError):
    """Raised when an internal consistency check fails."""

    pass


class IndexFormatError(DrIndexError):
    """Raised when an index file cannot be decoded."""

    pass


class ChecksumError(IndexFormatError):
    """Raised when an index file fails its CRC32 check."""

    pass


class ScriptParseError(DrIndexError):
    """Raised when an edit script line is malformed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
