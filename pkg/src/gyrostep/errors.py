"""Exception hierarchy."""


class GyroError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(GyroError, ValueError):
    """Malformed input: bad JSON shape, unparsable rational, bad parameter."""


class CarrierError(GyroError, ValueError):
    """An element does not belong to the instance it is used with."""


class BoundaryError(CarrierError):
    """A continuous element (or an operation result) is at or past the rim."""


class StepFunctionError(GyroError, ValueError):
    """Bad breakpoints, mismatched instances, or a missing witness."""


class DensityError(GyroError):
    """A dense or network family has no point where one is required."""


class VerificationError(GyroError):
    """A constructed witness failed its own post-condition re-check."""
