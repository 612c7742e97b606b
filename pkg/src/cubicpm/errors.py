"""Exception types shared across the package."""


class CubicpmError(Exception):
    """Base class for every error raised by this package."""


class LoopRejected(CubicpmError):
    pass


class VertexIdOutOfRange(CubicpmError):
    pass


class DisconnectedPart(CubicpmError):
    pass


class DegreeMismatch(CubicpmError):
    pass


class NotAPath(CubicpmError):
    pass


class NeighborClash(CubicpmError):
    pass


class RecipeTooLarge(CubicpmError):
    pass


class TooLarge(CubicpmError):
    pass


class MinDegreeViolated(CubicpmError):
    pass


class NotCyclically4EC(CubicpmError):
    pass


class ChainViolation(CubicpmError):
    pass


class SharedEndpoint(CubicpmError):
    pass


class InconsistentQuery(CubicpmError):
    pass


class NotUniquePM(CubicpmError):
    pass


class NotMatchingCovered(CubicpmError):
    pass


class FlowInfeasible(CubicpmError):
    pass


class UnknownName(CubicpmError):
    pass


class BadSize(CubicpmError):
    pass


class BadDegrees(CubicpmError):
    pass


class UnreachableParity(CubicpmError):
    pass


class GenerationFailed(CubicpmError):
    pass


class Bridged(CubicpmError):
    pass
