"""Exception types shared across the package."""
from __future__ import annotations


class MotperError(Exception):
    """Base class."""


class ParseError(MotperError, ValueError):
    pass


class NotAdmissible(MotperError, ValueError):
    pass


class UnsupportedLetter(MotperError, ValueError):
    pass


class WeightOutOfRange(MotperError, ValueError):
    pass


class WeightTooLarge(MotperError, ValueError):
    pass


class MissingRelationTable(MotperError, LookupError):
    pass


class DimensionMismatch(MotperError, RuntimeError):
    pass


class NotEffective(MotperError, ValueError):
    pass


class NotInImage(MotperError, ValueError):
    pass


class UnsupportedKind(MotperError, ValueError):
    pass


class UnknownGenerator(MotperError, KeyError):
    pass


class NotInvertible(MotperError, ArithmeticError):
    pass


class MissingWeights(MotperError, ValueError):
    pass


class MissingHodge(MotperError, ValueError):
    pass


class SizeMismatch(MotperError, ValueError):
    pass


class NotIntegrable(MotperError, ValueError):
    pass


class BasisMismatch(MotperError, ValueError):
    pass


class NotLengthN(MotperError, ValueError):
    pass


class UnsupportedBasePoint(MotperError, ValueError):
    pass


class Divergent(MotperError, ValueError):
    pass


class OutOfDomain(MotperError, ValueError):
    pass


class Unevaluable(MotperError, ValueError):
    pass


class TableChecksumError(MotperError, RuntimeError):
    pass
