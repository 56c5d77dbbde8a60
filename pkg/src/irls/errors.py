"""Domain exceptions. The CLI reports ``type(err).__name__`` on failure."""


class IrlsError(Exception):
    pass


class ParseError(IrlsError, ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class DuplicateEdge(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class BadWeight(ParseError):
    pass


class OutOfRange(IrlsError, IndexError):
    pass


class UnknownLabel(IrlsError, KeyError):
    def __str__(self):
        return f"unknown node label {self.args[0]!r}"


class IsolatedSeed(IrlsError, ValueError):
    pass


class EmptySeedSet(IrlsError, ValueError):
    pass


class Infeasible(IrlsError):
    pass


class NumericalFailure(IrlsError):
    pass


class DetectionFailed(IrlsError):
    def __init__(self, msg: str, last_community=None):
        super().__init__(msg)
        self.last_community = last_community


class EmptySet(IrlsError, ValueError):
    pass


class NoEdges(IrlsError, ValueError):
    pass


class DegenerateCommunity(IrlsError, ValueError):
    pass


class SeedNotCovered(IrlsError, KeyError):
    pass


class NoEligibleSeeds(IrlsError):
    pass
