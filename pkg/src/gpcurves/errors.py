"""Exception types raised across the package."""


class GpcError(Exception):
    """Base class for all package errors."""


class DataError(GpcError):
    """Input data could not be turned into a valid object."""


class ParseError(DataError):
    def __init__(self, line, message="malformed row"):
        self.line = line
        super().__init__(f"line {line}: {message}")


class InvalidPoint(DataError):
    def __init__(self, line, message="point must satisfy finite birth < death"):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DegenerateNormalizer(DataError):
    pass


class InvalidWeight(DataError):
    pass


class SigmaMismatch(GpcError):
    pass


class NonConvergence(GpcError):
    pass


class OrderTooLarge(GpcError):
    pass


class TooLarge(GpcError):
    pass


class InvalidMatching(GpcError):
    pass


class HypothesisViolated(GpcError):
    """A theorem's hypothesis does not hold for the given inputs."""


class WeightKindMismatch(HypothesisViolated):
    pass


class WitnessSaturated(GpcError):
    """Both curves underflowed before a separating point was found."""
