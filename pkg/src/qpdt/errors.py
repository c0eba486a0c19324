"""Exception hierarchy shared by all modules.

Every error carries a short class name that the command-line front end
reports in its JSON envelope.
"""

from __future__ import annotations

__all__ = [
    "QPDTError",
    "InvalidVertex",
    "InvariantViolation",
    "ParseError",
    "UnknownArrow",
    "ReductionDiverged",
    "NotMutatable",
    "SpaceMismatch",
    "SignMismatch",
    "OrderMismatch",
    "NotAUnit",
    "SignUnsupported",
    "TruncationOverflow",
    "DimensionCapExceeded",
    "InternalNonIntegral",
    "NotPolynomialCount",
    "LaurentViolation",
    "GMismatch",
    "CMismatch",
    "SignIncoherent",
    "MaxMonomialNotUnique",
    "DepthCapExceeded",
]


class QPDTError(Exception):
    """Base class for all errors raised by the package."""


class InvalidVertex(QPDTError, ValueError):
    pass


class InvariantViolation(QPDTError, ValueError):
    pass


class ParseError(QPDTError, ValueError):
    pass


class UnknownArrow(QPDTError, KeyError):
    pass


class ReductionDiverged(QPDTError):
    pass


class NotMutatable(QPDTError):
    pass


class SpaceMismatch(QPDTError, TypeError):
    pass


class SignMismatch(QPDTError, ValueError):
    pass


class OrderMismatch(QPDTError, ValueError):
    pass


class NotAUnit(QPDTError, ArithmeticError):
    pass


class SignUnsupported(QPDTError, ValueError):
    pass


class TruncationOverflow(QPDTError, ArithmeticError):
    pass


class DimensionCapExceeded(QPDTError):
    pass


class InternalNonIntegral(QPDTError, ArithmeticError):
    pass


class NotPolynomialCount(QPDTError, ArithmeticError):
    pass


class LaurentViolation(QPDTError, ArithmeticError):
    pass


class GMismatch(QPDTError):
    pass


class CMismatch(QPDTError):
    pass


class SignIncoherent(QPDTError):
    pass


class MaxMonomialNotUnique(QPDTError):
    pass


class DepthCapExceeded(QPDTError):
    pass
