"""Exception types shared across the package."""


class SteinerStarError(Exception):
    """Base class for all steinerstar errors."""


class DimensionMismatchError(SteinerStarError, ValueError):
    """Points of different dimensions were mixed in one computation."""


class CenterCoincidesWithPointError(SteinerStarError, ValueError):
    """A frame center fell within tolerance of an input point.

    The normalized frame is undefined there; the star/Steiner ratio of such
    a configuration is exactly 1.
    """


class NotConvergedError(SteinerStarError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class OddCardinalityError(SteinerStarError, ValueError):
    """A perfect matching was requested for an odd number of points."""


class MatchingTooLargeError(SteinerStarError, ValueError):
    """Exact matching was requested beyond the supported instance size."""


class QuadratureError(SteinerStarError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class ConjectureCounterexampleWarning(UserWarning):
    """A measured ratio exceeded a conjectured (unproven) bound."""
