"""Exception hierarchy shared by every gmtlab module."""


class GmtLabError(Exception):
    """Base class for all toolkit errors."""


class SingularMatrix(GmtLabError, ValueError):
    pass


class AmbiguousClassification(GmtLabError):
    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = tuple(candidates)


class NotElliptic(GmtLabError, ValueError):
    pass


class DegenerateDenominator(GmtLabError, ArithmeticError):
    pass


class UnboundSymbol(GmtLabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownLabel(GmtLabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownName(GmtLabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class BadIndex(GmtLabError, ValueError):
    pass


class PreconditionTrSquared(GmtLabError, ValueError):
    pass


class PreconditionNotGmtPair(GmtLabError, ValueError):
    pass


class NoCaseMatches(GmtLabError):
    pass


class LemmaViolation(GmtLabError):
    """A numerical result contradicts a statement that should hold identically."""


class NoBranchSatisfiesRelation(GmtLabError):
    pass


class NegativeRadicand(GmtLabError, ValueError):
    pass


class NoSolution(GmtLabError):
    def __init__(self, message, dimension=0):
        super().__init__(message)
        self.dimension = dimension


class AmbiguousSolution(GmtLabError):
    def __init__(self, message, dimension):
        super().__init__(message)
        self.dimension = dimension


class SingularNormalization(GmtLabError):
    pass


class RootFindFailed(GmtLabError):
    pass
