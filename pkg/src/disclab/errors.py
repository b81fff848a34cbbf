"""Exception hierarchy shared by every disclab module."""


class DisclabError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class InvalidInput(DisclabError, ValueError):
    """Malformed arguments: bad mode names, nonpositive degrees and the like."""


class PolySyntaxError(DisclabError):
    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class UnknownVariable(DisclabError):
    pass


class VarSetMismatch(DisclabError):
    pass


class MissingCoordinate(DisclabError):
    pass


class VariableCollision(DisclabError):
    pass


class NotHomogeneous(DisclabError):
    pass


class ZeroInput(DisclabError):
    pass


class DimensionMismatch(DisclabError):
    pass


class DegenerateSpecialization(DisclabError):
    pass


class DegreeTooSmall(DisclabError):
    pass


class DegreePreconditionViolated(DisclabError):
    pass


class EmptyList(DisclabError):
    pass


class IndexOutOfRange(DisclabError):
    pass


class AllDegreesOne(DisclabError):
    pass


class HypersurfaceConditionViolated(DisclabError):
    pass


class NotGroebner(DisclabError):
    pass


class TooManyActive(DisclabError):
    pass


class InfeasibleStartBudget(DisclabError):
    pass


class FlagMissing(DisclabError):
    pass


class NotInterior(DisclabError):
    pass


class DegreeMismatch(DisclabError):
    pass


class GroupMismatch(DisclabError):
    pass


class EmptySupport(DisclabError):
    pass


class DimensionTooLarge(DisclabError):
    pass


class WrongArity(DisclabError):
    pass


class BudgetExceeded(Exception):
    """A reduction/step budget ran out (CLI exit code 2).

    Deliberately not a DisclabError: callers must never mistake a truncated
    computation for a domain answer.
    """

    def __init__(self, message, steps=None):
        self.steps = steps
        super().__init__(message)
