"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A configuration or argument violates a documented invariant."""


class BoundsError(ValidationError):
    """A pixel index falls outside the detector grid."""


class InvalidPairError(ValidationError):
    """A trajectory was requested from two pixels on the same panel."""


class InvalidPlanError(ValidationError):
    """A scan plan places a detector inside the pyramid footprint."""
