"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GraphError(Exception):
    """Base class for all errors raised by tk5cert."""


class EmptySet(GraphError, ValueError):
    pass


class DisconnectedContractionSet(GraphError, ValueError):
    pass


class TooSmall(GraphError, ValueError):
    pass


class BudgetExceeded(GraphError):
    """A search exceeded its configured node or size guard."""

    def __init__(self, message: str = "search budget exhausted", *, spent: int | None = None):
        super().__init__(message)
        self.spent = spent


class HypothesisFailed(GraphError):
    """A checked precondition of a structural lemma does not hold."""

    def __init__(self, message: str, *, which: str | None = None):
        super().__init__(message)
        self.which = which


class NotTwoConnected(GraphError, ValueError):
    pass


class NotFiveConnected(GraphError, ValueError):
    pass


class PreconditionFailed(GraphError, ValueError):
    pass


class NotARung(GraphError, ValueError):
    pass


class IncompatibleGluing(GraphError, ValueError):
    pass


class NotFound(GraphError):
    """A search that a theorem guarantees to succeed came back empty."""


class LiftFailed(GraphError):
    pass


class ObstructionNotFound(GraphError):
    """Neither a linkage nor a 3-planar obstruction was found."""


class KindMismatch(GraphError, ValueError):
    pass


class BadParameters(GraphError, ValueError):
    pass


class TheoremViolation(GraphError):
    """A 5-connected nonplanar graph produced no TK5 witness."""


class ParseError(GraphError, ValueError):
    pass
