"""Exception hierarchy shared by every module of the package."""


class WeightAlignError(ValueError):
    """Base class; the CLI maps any of these to exit code 1."""


class NotAPartition(WeightAlignError):
    pass


class NegationAsymmetric(WeightAlignError):
    pass


class DTypeCentralSingleton(WeightAlignError):
    pass


class NotTransitive(WeightAlignError):
    pass


class NotIrreflexive(WeightAlignError):
    pass


class GroundMismatch(WeightAlignError):
    pass


class NotLinear(WeightAlignError):
    pass


class BoundExceeded(WeightAlignError):
    pass


class LengthMismatch(WeightAlignError):
    pass


class RankTooSmall(WeightAlignError):
    pass


class TypeGroundMismatch(WeightAlignError):
    pass


class DConstraintViolated(WeightAlignError):
    pass


class NotParabolicSet(WeightAlignError):
    pass


class DomainViolation(WeightAlignError):
    pass


class IncompatibleArguments(WeightAlignError):
    pass


class NotInSupport(WeightAlignError):
    pass


class NotAligned(WeightAlignError):
    pass


class RankBound(WeightAlignError):
    pass


class PartitionTooLong(WeightAlignError):
    pass


class BracketMismatch(WeightAlignError):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class WindowTooSmall(WeightAlignError):
    pass


class ParseError(WeightAlignError):
    pass


class UnknownDemo(WeightAlignError):
    pass
