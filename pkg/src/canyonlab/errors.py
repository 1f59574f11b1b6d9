"""Exception hierarchy shared by every stage of the pipeline."""


class CanyonError(Exception):
    """Base class; ``stage`` names the pipeline stage that failed."""

    stage = "core"


class DivisionByZero(CanyonError, ZeroDivisionError):
    stage = "arith"


class IncompatibleTowers(CanyonError):
    stage = "arith"


class ReducibleMinPoly(CanyonError):
    stage = "arith"


class ExtensionTooLarge(CanyonError):
    """The coefficient tower would exceed the configured degree cap."""

    stage = "arith"


class TruncationTooLow(CanyonError):
    stage = "series"


class SameArc(CanyonError):
    stage = "series"


class ParseError(CanyonError, ValueError):
    stage = "parse"


class ZeroPolynomial(CanyonError, ValueError):
    stage = "poly"


class NotMiniRegular(CanyonError, ValueError):
    stage = "poly"


class MalformedTopEdge(CanyonError):
    stage = "polygon"


class NoDots(CanyonError):
    stage = "canyon"


class InconsistentCanyon(CanyonError):
    stage = "canyon"


class UnequalOrders(CanyonError):
    stage = "invariants"


class MissingCounterpartPolar(CanyonError):
    stage = "invariants"
