"""Gyrogroups and their step-function extensions over [0, 1)."""

from .core import (CyclicGroup, EinsteinBall, FiniteSubgyrogroup, Gyrogroup, MobiusDisk,
                   Neighborhood, SymmetricGroup3, contains, instance_from_config)
from .errors import (BoundaryError, CarrierError, DensityError, GyroError, SchemaError,
                     StepFunctionError, VerificationError)
from .step import (StepExtension, StepFunction, add, bad_measure, coadd_sf, cosub_sf,
                   embed_const, from_parts, gyr_sf, in_neighborhood, in_translate,
                   is_constant, min_gap, neg, path, separation_witness, zero)

__all__ = [
    "BoundaryError", "CarrierError", "CyclicGroup", "DensityError", "EinsteinBall",
    "FiniteSubgyrogroup", "GyroError", "Gyrogroup", "MobiusDisk", "Neighborhood",
    "SchemaError", "StepExtension", "StepFunction", "StepFunctionError",
    "SymmetricGroup3", "VerificationError", "add", "bad_measure", "coadd_sf",
    "contains", "cosub_sf", "embed_const", "from_parts", "gyr_sf", "in_neighborhood",
    "in_translate", "instance_from_config", "is_constant", "min_gap", "neg", "path",
    "separation_witness", "zero",
]
