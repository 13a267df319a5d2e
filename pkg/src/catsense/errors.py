"""Exception types shared across the package."""


class CatsenseError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(CatsenseError, ValueError):
    """Objects that must share a mode count or shape do not."""


class DegenerateState(CatsenseError, ValueError):
    """State norm is zero or negative beyond tolerance; moments are undefined."""


class ConsistencyError(CatsenseError, ArithmeticError):
    """A quantity that must be real (or non-negative) came out otherwise."""


class HermiticityError(CatsenseError, ValueError):
    """An operator expected to be Hermitian is not, beyond tolerance."""


class TruncationError(CatsenseError, ValueError):
    """Fock cutoff too small: probability mass near the cutoff is not negligible."""


class CapacityError(CatsenseError, ValueError):
    """Request exceeds the hard limits of the brute-force oracle."""


class StepTooSmallError(CatsenseError, ValueError):
    """Finite-difference step so small the fidelity deficit drowns in roundoff."""


class ToleranceFailure(CatsenseError, RuntimeError):
    """A verification table exceeded one of its error gates."""
