"""Custom exceptions for coxtype."""

from typing import Optional


class CoxtypeError(Exception):
    """Base exception for all coxtype errors."""

    pass


class DatumError(CoxtypeError):
    """The supplied Coxeter datum is malformed or violates an invariant."""

    pass


class ParseError(DatumError):
    """Error parsing the datum grammar."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class SemanticError(DatumError):
    """A syntactically valid datum that breaks a structural invariant."""

    def __init__(self, message: str, invariant: str):
        self.invariant = invariant
        super().__init__(f"{message} [{invariant}]")


class PreconditionError(CoxtypeError):
    """An operation was called outside its precondition."""

    pass


class BudgetExceededError(CoxtypeError):
    """An enumeration or search ran past its configured budget."""

    pass


class InternalError(CoxtypeError):
    """A guaranteed invariant failed; indicates a bug in coxtype."""

    pass


class DiscrepancyError(CoxtypeError):
    """A checked statement of the theory failed on a concrete cell."""

    pass


class UnsupportedCellError(CoxtypeError):
    """The datum lies outside the cells the smoothness rules cover."""

    pass


class ConfigError(CoxtypeError):
    """Error in configuration file or settings."""

    pass
