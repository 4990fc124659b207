# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

from typing import Any, Optional


class RemovalBoundsError(Exception):
    """Base class for all errors raised by removal_bounds"""


class BudgetExceededError(RemovalBoundsError):
    """An enumeration or scan would exceed its configured budget"""

    def __init__(self, bound_name: str, requested: int, limit: int):
        self.bound_name = bound_name
        self.requested = requested
        self.limit = limit
        super().__init__(f"{bound_name} exceeded: requested {requested}, limit {limit}")


class DimensionMismatchError(RemovalBoundsError, ValueError):
    pass


class OutOfRangeError(RemovalBoundsError, ValueError):
    pass


class QuadratureError(RemovalBoundsError):
    pass


class NumericalIdentityError(RemovalBoundsError):
    pass


class VerificationError(RemovalBoundsError):
    """A certified property failed; the witness shows where"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        self.witness = witness
        super().__init__(message)


class GraphFormatError(RemovalBoundsError, ValueError):
    """Malformed graph file"""

    def __init__(self, path: str, line_number: int, message: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {message}")
