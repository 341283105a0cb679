"""Exception hierarchy.

Everything raised deliberately by this package derives from NilgenError.
PreconditionError marks inputs that are well formed but outside an
operation's domain (the CLI maps these to exit code 3).
"""


class NilgenError(Exception):
    pass


class FieldMismatch(NilgenError, TypeError):
    pass


class DivisionByZero(NilgenError, ZeroDivisionError):
    pass


class DimensionMismatch(NilgenError, ValueError):
    pass


class PreconditionError(NilgenError, ValueError):
    pass


class SingularMatrix(PreconditionError):
    pass


class NotNilpotent(PreconditionError):
    pass


class ZeroMatrix(PreconditionError):
    pass


class NotRankOneNilpotent(PreconditionError):
    pass


class NotDiagonal(PreconditionError):
    pass


class RepeatedOrZeroDiagonal(PreconditionError):
    pass


class NotTraceless(PreconditionError):
    pass


class EmptyGenerators(PreconditionError):
    pass


class CharacteristicTwo(PreconditionError):
    pass


class ZeroScalingFactor(PreconditionError):
    pass


class ConditionsViolated(PreconditionError):
    """Raised with the 1-based indices of every failed condition."""

    def __init__(self, failed, message=None):
        self.failed = tuple(failed)
        super().__init__(message or f"conditions violated: {list(self.failed)}")


class NoConsistentSet(NilgenError):
    pass


class BudgetExhausted(NilgenError):
    def __init__(self, message, candidates=()):
        self.candidates = list(candidates)
        super().__init__(message)
