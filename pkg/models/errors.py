"""
Exception hierarchy shared by the library and the CLI.
The CLI maps InputValidationError to exit code 2 and UnsupportedCaseError to 3.
"""

from typing import Optional


class RestrictionToolError(Exception):
    """Base class for every error raised on purpose by this package"""


class InputValidationError(RestrictionToolError, ValueError):
    """Input violates a documented precondition or schema"""


class UnsupportedCaseError(RestrictionToolError):
    """Input is well formed but falls outside the cases we can evaluate"""


class InconsistentSystemError(InputValidationError):
    """An overdetermined linear system failed its consistency check"""

    def __init__(self, message: str, column: Optional[str] = None):
        super().__init__(message)
        self.column = column
