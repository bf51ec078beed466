"""Exception types shared across the package."""


class LgboundsError(Exception):
    """Base class for every error this package raises deliberately."""


class DimensionMismatch(LgboundsError):
    """Operands live on Hilbert spaces of different dimensions."""


class NotHermitian(LgboundsError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class NotDensityMatrix(LgboundsError):
    """Matrix fails a density-matrix check (Hermiticity, trace, positivity)."""


class ZeroVector(LgboundsError):
    """A zero state vector cannot be normalized into a pure state."""


class DegenerateObservable(LgboundsError):
    """Observable has numerically zero spread in the given state."""


class NumericalFailure(LgboundsError):
    """A numerical routine diverged or produced values outside sanity bands."""


class OutOfRange(LgboundsError):
    """Scalar input lies outside its documented domain."""


class InvalidConfig(LgboundsError):
    """Run configuration violates its invariants."""


class IoError(LgboundsError):
    """Reading or writing an output artifact failed."""
