"""Exception hierarchy shared by every topocard module."""


class TopocardError(Exception):
    """Base class for all errors raised by this package."""

    @property
    def reason(self) -> str:
        return type(self).__name__


# -- interval arithmetic -----------------------------------------------------

class IntervalError(TopocardError, ValueError):
    pass


class InvalidInterval(IntervalError):
    """Endpoints are not integers, are negative, or are inverted."""


class EmptyAfterClamp(IntervalError):
    """No nonnegative integer survives an interval operation."""


class DivisorContainsZero(IntervalError):
    pass


class DisjointEstimates(IntervalError):
    """Two estimates for one cardinality share no member."""


# -- estimators --------------------------------------------------------------

class EstimationError(TopocardError):
    pass


class EmptyEstimate(EstimationError):
    pass


class HypothesisViolated(EstimationError, ValueError):
    pass


class UnknownTheorem(TopocardError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


# -- topology ----------------------------------------------------------------

class NotATopology(TopocardError, ValueError):
    """The open-set family violates an axiom.

    ``pair`` holds the first offending pair of opens (as bitmasks) when the
    violation is a missing union or intersection.
    """

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class CarrierTooLarge(TopocardError, ValueError):
    pass


# Everything an estimator may raise for an inconsistent hypothesis bundle.
ESTIMATOR_FAILURES = (EstimationError, IntervalError)
