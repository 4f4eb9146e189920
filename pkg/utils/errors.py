"""Exception hierarchy shared by every package.

``MathError`` subclasses signal a mathematical obstruction (exit code 1 on the
command line), ``InputError`` subclasses a malformed input (exit code 2).
"""
from typing import Any, Optional


class InvariantsError(Exception):
    """Base class for all errors raised by this project."""


class MathError(InvariantsError):
    """A computation hit a mathematical obstruction."""


class InputError(InvariantsError):
    """An input could not be understood."""


class PoleError(MathError):
    """A denominator vanished identically or at an evaluation point."""

    def __init__(self, message: str, point: Optional[Any] = None):
        super().__init__(message)
        self.point = point


class DegenerateSymbolError(MathError):
    """The symbol is not regular, so no Wagner connection exists."""


class SingularSystemError(MathError):
    """A symbolic linear system has no unique solution."""


class SingularJacobianError(MathError):
    """A coordinate change has identically vanishing Jacobian."""


class GeneralPositionError(MathError):
    """Two invariants fail the general-position condition."""

    def __init__(self, message: str, jacobian: Optional[Any] = None, point: Optional[Any] = None):
        super().__init__(message)
        self.jacobian = jacobian
        self.point = point


class JetOrderError(MathError):
    """An invariant needs jets of higher order than were declared."""


class ParseError(InputError):
    """Expression text is not in the grammar."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class UnknownVariableError(ParseError):
    """Expression uses a name outside the declared variables."""


class OperatorFileError(InputError):
    """Operator JSON document is malformed."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class InvariantNameError(InputError):
    """Invariant battery name cannot be resolved."""
