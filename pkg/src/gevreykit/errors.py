"""Exception types raised by gevreykit."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class DegenerateSequenceError(DomainError):
    """A coefficient window carries no usable growth information."""


class DegenerateApproximantError(DomainError):
    """The linear system defining a Pade approximant is (numerically) singular."""


class RayObstructedError(DomainError):
    """A pole of the continued Borel transform sits on or next to the Laplace ray."""
