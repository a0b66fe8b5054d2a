"""Exception types shared across the package."""


class MockformsError(Exception):
    pass


class AmbientOrderTooSmall(MockformsError):
    """Requested root of unity does not live in the ambient cyclotomic field."""


class OrderMismatch(MockformsError):
    """Binary operation on cyclotomic numbers of different ambient orders."""


class PoleAtQZero(MockformsError):
    """A geometric denominator has zero q-valuation; pure-q expansion impossible."""


class NotAUnit(MockformsError):
    """Series inversion requires a single-monomial leading coefficient."""


class InsufficientPrecision(MockformsError):
    """Comparison requested beyond the known truncation order."""


class InvalidLevel(MockformsError):
    """Level parameter must be positive for the bilateral sum to truncate."""


class NearPole(MockformsError):
    """Numeric evaluation point too close to a denominator zero."""


class RankUnstable(MockformsError):
    """Elimination rank and substitution rank disagree; raise the truncation order."""


class ModeUnsupported(MockformsError):
    """Identity case does not support the requested verification mode."""
