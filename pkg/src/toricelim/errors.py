"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Geometric precondition violated (lower-dimensional polytope,
    dimension mismatch, unbounded region, unsupported ambient dimension)."""


class ExactnessFailure(RuntimeError):
    """The descending method could not reach the required rank at some level,
    i.e. the (specialized) complex is not exact."""

    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f"complex not exact at level {level}")


class DivisionFailure(RuntimeError):
    """The denominator of a complex determinant does not divide the numerator.
    Signals an internal bug; never expected for exact generic complexes."""


class TargetSupportEscape(ValueError):
    """A target polynomial has support outside the allowed lattice-point set."""


class NoCertificate(Exception):
    """No cofactor representation with the declared supports exists."""
