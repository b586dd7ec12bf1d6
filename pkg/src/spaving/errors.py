"""Shared exception types.

The CLI maps these onto exit codes: usage errors exit 2, scale-bound
refusals exit 3, and failed mathematical assertions exit 1.
"""


class SpavingError(Exception):
    """Base class for all errors raised by this package."""


class StabilityError(SpavingError, ValueError):
    """A circuit-hyperplane family is not stable in the Johnson graph.

    Carries one offending pair so callers can report it.
    """

    def __init__(self, x: int, y: int, n: int, r: int):
        self.pair = (x, y)
        self.n = n
        self.r = r
        super().__init__(
            f"sets {x:#x} and {y:#x} meet in r-1 = {r - 1} elements; "
            f"the family is not stable in J({n},{r})"
        )


class ScaleError(SpavingError, RuntimeError):
    """An operation was refused because the instance exceeds its scale bound."""


class FormatError(SpavingError, ValueError):
    """A file or string could not be parsed; message names the location."""
