"""Exception types raised by the geometric routines."""


class CKError(ValueError):
    pass


class ChartDomainError(CKError):
    """A point lies outside the domain of the requested chart."""


class SingularLocusError(ChartDomainError):
    """The metric formula is singular at the requested chart point."""


class ConstraintViolation(CKError):
    """Ambient coordinates violate the sphere or Pluecker constraints."""


class DegenerateMetricError(CKError):
    pass


class DegeneratePlaneError(CKError):
    pass


class UnsupportedDimensionError(CKError):
    pass


class DegenerateLineError(CKError):
    """Two points do not span a line, or the line has null norm."""
