"""
Error hierarchy for crjoin.

Every error carries a stable ``error_code`` (reported by the CLI and the
harness) and the process exit code the CLI maps it to.
"""

from typing import Optional

EXIT_CHECK_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_CAP = 3


class CrJoinError(Exception):
    """Base class for all crjoin errors."""

    error_code = "CRJOIN_ERROR"
    exit_code = EXIT_CHECK_FAILURE


class InputError(CrJoinError, ValueError):
    """Invalid input supplied by the caller."""

    error_code = "input-error"
    exit_code = EXIT_INPUT_ERROR


class InvalidPositionError(InputError):
    """A position does not point at a redex (or does not exist)."""

    error_code = "invalid-position"


class ParseError(InputError):
    """Surface syntax could not be parsed."""

    error_code = "parse-error"

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class LinkInvalidError(InputError):
    """No redex of a link's source contracts to its target."""

    error_code = "link-invalid"

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line


class AppendMismatchError(InputError):
    """Chains cannot be appended because the pivot terms differ."""

    error_code = "append-mismatch"


class PeakMismatchError(InputError):
    """The two sides of a peak do not start at the same term."""

    error_code = "peak-mismatch"


class OrderViolationError(InputError):
    """Arguments violate a required ordering such as l <= r."""

    error_code = "order-violation"


class IndexOutOfRangeError(InputError):
    """Chain indices outside 0 <= i <= j <= k."""

    error_code = "index-out-of-range"


class UnknownFunctionError(InputError):
    """A bound function name is not known."""

    error_code = "unknown-function"


class PatternCapError(InputError):
    """Pattern enumeration requested beyond the configured maximum."""

    error_code = "cap-exceeded"


class ResourceCapError(CrJoinError):
    """A term-size or path-length cap was exceeded."""

    error_code = "resource-cap"
    exit_code = EXIT_RESOURCE_CAP


class ReplayError(CrJoinError):
    """A constructed path failed replay or an endpoint assertion."""

    error_code = "replay-error"
    exit_code = EXIT_CHECK_FAILURE


class PropertyViolation(CrJoinError):
    """A harness invariant did not hold on a generated instance."""

    error_code = "property-violation"
    exit_code = EXIT_CHECK_FAILURE
