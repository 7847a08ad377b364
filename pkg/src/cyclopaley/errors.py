"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CyclopaleyError(Exception):
    """Base class for all errors raised by cyclopaley."""


class NotPrimeError(CyclopaleyError, ValueError):
    pass


class SizeCapExceeded(CyclopaleyError):
    """Raised when a field (or derived table) would exceed the configured cap."""


class ZeroInverseError(CyclopaleyError, ZeroDivisionError):
    pass


class LogOfZeroError(CyclopaleyError, ValueError):
    pass


class ZeroHasNoClass(CyclopaleyError, ValueError):
    pass


class DivisibilityViolation(CyclopaleyError, ValueError):
    """2d does not divide q - 1."""


class IndexSetError(CyclopaleyError, ValueError):
    """Index set has the wrong size or members outside [0, 2d)."""


class AsymmetricConnectionSet(CyclopaleyError, ValueError):
    """D != -D, so the Cayley graph would be directed."""


class NotSemiPrimitive(CyclopaleyError):
    pass


class ROddError(CyclopaleyError):
    """The closed forms used here need q = p^(2rt) with r even."""


class DTooSmall(CyclopaleyError, ValueError):
    pass


class WrongIndexSet(CyclopaleyError, ValueError):
    pass


class NotACliqueError(CyclopaleyError, ValueError):
    pass


class ZeroNotInClique(CyclopaleyError, ValueError):
    pass


class SeedNotClique(CyclopaleyError, ValueError):
    pass


class InducedGraphTooLarge(CyclopaleyError):
    pass


class ZeroFrequency(CyclopaleyError, ValueError):
    pass


class WrongFieldShape(CyclopaleyError, ValueError):
    pass


class SubfieldInput(CyclopaleyError, ValueError):
    pass


class TrivialCharacter(CyclopaleyError, ValueError):
    pass


class NotInC0(CyclopaleyError, ValueError):
    pass


class TimedOut(CyclopaleyError):
    """Search deadline hit.  ``best`` holds the largest clique seen so far,
    which is only a lower bound on the true optimum."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
