"""Exception hierarchy shared by every robkit module."""

from __future__ import annotations


class RobkitError(Exception):
    """Base class for all robkit errors."""


class DimensionError(RobkitError, ValueError):
    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class AsymmetryError(RobkitError, ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"matrix is not symmetric at ({i}, {j})")
        self.i = i
        self.j = j


class ParseError(RobkitError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class LengthMismatchError(RobkitError, ValueError):
    pass


class IncompleteInputError(RobkitError, ValueError):
    pass


class EmptyValueSetError(RobkitError, ValueError):
    pass


class NotStrongRobinsonError(RobkitError, ValueError):
    def __init__(self, violation):
        super().__init__(f"matrix is not Strong-Robinson in its given order: {violation}")
        self.violation = violation


class DomainMismatchError(RobkitError, ValueError):
    def __init__(self, uncovered, extraneous):
        self.uncovered = sorted(uncovered)
        self.extraneous = sorted(extraneous)
        super().__init__(
            f"completion domain mismatch: uncovered={self.uncovered} "
            f"extraneous={self.extraneous}"
        )


class SizeCapError(RobkitError, ValueError):
    pass


class TooManyHolesError(RobkitError, ValueError):
    pass
