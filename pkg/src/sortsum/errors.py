"""Exception types shared across the package."""


class SortsumError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(SortsumError, ValueError):
    """An accuracy or threshold parameter is outside its admissible range."""


class OutOfRangeError(SortsumError, IndexError):
    """A position above the view length was requested (contract violation)."""


class UnsortedInputError(SortsumError, ValueError):
    """Input data is not nondecreasing.

    ``index`` is the 1-based position of the first element that is smaller
    than its predecessor.
    """

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"input is not sorted: inversion at position {index}")


class NegativeElementError(SortsumError, ValueError):
    """A negative element was observed by an algorithm that requires
    nonnegative input.  No sublinear-time approximation exists once negative
    elements are allowed, so the run is refused rather than silently wrong.
    """


class MalformedCertificateError(SortsumError, ValueError):
    """A region certificate does not have the required [s, n] suffix shape."""


class BudgetExceededError(SortsumError, RuntimeError):
    """A query-budgeted algorithm attempted to exceed its budget."""


class InternalInvariantError(SortsumError, RuntimeError):
    """An internal invariant that should be unreachable was violated."""
