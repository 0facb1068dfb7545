"""Exception types shared by the whole package."""


class PolyhomError(Exception):
    """Base class for all package errors."""


class InputError(PolyhomError):
    """Malformed user input (tables, files, formulas, CLI arguments)."""


class UnknownOperationError(InputError):
    """An operation name was looked up that the algebra does not have."""


class ArityMismatchError(InputError):
    """An operation was applied to the wrong number of arguments."""


class OutOfRangeError(InputError):
    """An element outside 0..size-1 appeared in arguments or tables."""


class ParseError(InputError):
    """Algebra file or formula text could not be parsed."""


class NotAHomomorphismError(InputError):
    """A supplied partial map violates the homomorphism condition on its domain."""


class WellDefinednessError(PolyhomError):
    """Map extension along generated elements is inconsistent.

    Carries the pair of witnessing terms so callers can turn the failure
    into a solution-set separation witness.
    """

    def __init__(self, message, term_a=None, term_b=None):
        super().__init__(message)
        self.term_a = term_a
        self.term_b = term_b


class ConditionVError(PolyhomError):
    """Quantifier elimination was requested for a unary algebra whose
    sources do not all have the same height (and are not absent)."""


class ResourceBoundExceeded(PolyhomError):
    """A computation would exceed the configured cell or node budget.

    This is a distinguished outcome, never converted into a silent
    wrong answer.
    """
