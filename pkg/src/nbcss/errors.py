"""Exception types shared across the package."""

from __future__ import annotations


class NbcssError(Exception):
    """Base class for all errors raised by nbcss."""


class BadDegree(NbcssError, ValueError):
    pass


class NotPrimitive(NbcssError, ValueError):
    pass


class LogOfZero(NbcssError, ValueError):
    pass


class DimensionMismatch(NbcssError, ValueError):
    pass


class FieldMismatch(NbcssError, ValueError):
    pass


class DomainMismatch(NbcssError, ValueError):
    pass


class EmptySeed(NbcssError, ValueError):
    pass


class ParseError(NbcssError, ValueError):
    pass


class NotPrime(NbcssError, ValueError):
    pass


class OddOverlap(NbcssError, ValueError):
    """The pair is not orthogonal over F_2."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(f"{len(self.violations)} row pair(s) with odd overlap")


class NotACodeword(NbcssError, ValueError):
    pass


class InfeasibleError(NbcssError):
    """Raised when the requested construction cannot be produced."""


class OverlapTooLarge(InfeasibleError):
    """A row pair shares more than two columns; the linear reduction does not apply."""

    def __init__(self, i: int, ip: int, size: int):
        self.i, self.ip, self.size = i, ip, size
        super().__init__(f"rows ({i}, {ip}) overlap in {size} columns; only 0 or 2 supported")


class Timeout(InfeasibleError):
    """The heuristic solver ran out of iterations. Not a proof of infeasibility."""


class NoUnitPivot(InfeasibleError):
    """Unit-pivot elimination got stuck: the remaining rows have no +-1 entry."""

    def __init__(self, cols):
        self.cols = tuple(cols)
        super().__init__(f"no +-1 pivot available in columns {list(self.cols)}")
