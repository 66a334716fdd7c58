"""Exception hierarchy shared by the solvers."""


class DeltaShockError(Exception):
    """Base class for numerical failures raised by this package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class PressureOverflowError(OverflowError, DeltaShockError):
    """Density too large for a direct evaluation of the exponential pressure."""


class OverflowAtVanishingEpsilon(PressureOverflowError):
    """A shock-curve root lies beyond the direct-evaluation density bound.

    Expected as epsilon -> 0; callers switch to the log-domain path.
    """


class DegenerateJumpError(DeltaShockError, ZeroDivisionError):
    """Mass-equation shock speed requested for equal densities."""


class EpsilonTooLarge(DeltaShockError):
    """The two-shock bracket fails: epsilon is above the validity threshold."""


class RarefactionOverlap(DeltaShockError):
    """The two rarefaction curves do not separate; no vacuum forms."""


class OutsideBVWindow(DeltaShockError):
    """The flux-shifted model has no bounded-variation solution for this data."""


class DenominatorVanishing(OutsideBVWindow):
    """Intermediate density formula hits its pole (or turns negative)."""


class BlowUpError(DeltaShockError):
    """Finite-volume run produced a non-finite cell value."""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step
