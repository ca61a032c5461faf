"""Exception hierarchy.

Failures split into two families that the command line maps to different
exit codes: :class:`CheckFailed` (a theorem check came out false) and
:class:`DegeneracyError` (the configuration itself is unusable).
"""

from __future__ import annotations


class ChainConicError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(ChainConicError, ValueError):
    """Invalid input parameters (bad ``n``, repeated parameters, ...)."""


class DegeneracyError(ChainConicError):
    """A construction hit a degenerate case."""


class CheckFailed(ChainConicError):
    """A verified statement turned out false."""


# kernel


class CoincidentPoints(DegeneracyError):
    pass


class DuplicatePoints(DegeneracyError):
    pass


class CollinearPoints(DegeneracyError):
    pass


class TangentContact(DegeneracyError):
    """Two curves touch at the known point, so there is no second point."""


class NotOnCurves(DegeneracyError):
    pass


# chain


class DegenerateStep(DegeneracyError):
    def __init__(self, cause: DegeneracyError, index: int):
        self.cause = cause
        self.index = index
        super().__init__(f"step {index}: {type(cause).__name__}: {cause}")


class DuplicateChainPoint(DegeneracyError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Q_{index + 1} coincides with a neighbouring P point")


class DegenerateCenter(DegeneracyError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"quadruple {index} is collinear; its center is at infinity")


class NotClosed(CheckFailed):
    pass


# conic


class DegenerateConic(DegeneracyError):
    pass


class FocusOnTangent(DegenerateConic):
    pass


class WrongArity(DegeneracyError, ValueError):
    pass


class DegenerateDiagonal(DegeneracyError):
    pass


class NotInscribed(CheckFailed):
    def __init__(self, index: int, residual):
        self.index = index
        self.residual = residual
        super().__init__(f"side {index} is not tangent (residual {residual})")


class ClassificationMismatch(CheckFailed):
    """Conic kind disagrees with the position of K relative to the carrier."""


# generator


class ExhaustedRetries(ChainConicError):
    pass


class UnknownScenario(ChainConicError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
