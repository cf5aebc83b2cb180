"""Exception types shared across the package."""


class PwlCanardError(Exception):
    """Base class for all package-specific errors."""


class Violation(PwlCanardError):
    """Normal-form parameter constraints violated (e.g. B <= delta_plus)."""


class NotVI3(PwlCanardError):
    """A general piecewise-linear input does not satisfy the two-fold
    admissibility conditions.  The message names the failing condition."""


class DomainExceeded(PwlCanardError):
    """Requested evaluation point lies at or beyond the right end of the
    valid domain."""


class ImageExceeded(PwlCanardError):
    """Requested point lies at or beyond the left end of the half-map image."""


class OutOfBranch(PwlCanardError):
    """Antiderivative evaluated outside the interval where V > 0."""


class BracketFailure(PwlCanardError):
    """No sign change found while growing a root bracket; signals an input
    at the edge of the numeric domain."""


class AtAsymptote(PwlCanardError):
    """Hyperbola evaluated too close to its vertical asymptote."""


class NoReturn(PwlCanardError):
    """A trajectory left the region of interest without returning to the
    section."""


class BoxExit(PwlCanardError):
    """Integration left the configured bounding box.  Carries the partial
    trajectory in ``.trajectory``."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class TimeExhausted(PwlCanardError):
    """Integration hit the time budget.  Carries the partial trajectory in
    ``.trajectory``."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory
