"""Exception taxonomy shared by the whole package.

The CLI maps these onto exit codes: parse errors exit 1, precondition
violations exit 2, internal invariant breaches exit 3.
"""


class ApolarError(Exception):
    """Base class for all package errors."""


class ParseError(ApolarError):
    """Raised when an expression does not conform to the input grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PreconditionError(ApolarError):
    """An operation was called outside its stated domain."""


class FieldMismatchError(PreconditionError):
    """Two operands live in different coefficient fields."""


class CharacteristicError(PreconditionError):
    """The field characteristic is too small for the requested degree."""


class InvariantError(ApolarError):
    """An internal consistency check failed; indicates a bug."""
