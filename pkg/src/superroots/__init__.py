"""Exact root systems, skeletons and symmetry groups of Kac-Moody
superalgebra Cartan data."""
from .errors import (
    Decomposable,
    DomainError,
    FieldMismatch,
    InfiniteSystem,
    InvalidParameters,
    NotAffine,
    NotAGCM,
    NotAnAutomorphism,
    NotDEquivalent,
    NotGCM,
    NotKacMoody,
    NotReflectable,
    NotSymmetrizable,
    ParameterizedInput,
    PathBreaks,
    SuperrootsError,
)
from .scalars import QQ, IntegralityResult, Scalar, ScalarField, integrality_probe

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "IntegralityResult",
    "Scalar",
    "ScalarField",
    "integrality_probe",
    "SuperrootsError",
    "DomainError",
    "ParameterizedInput",
    "FieldMismatch",
    "InvalidParameters",
    "NotReflectable",
    "NotDEquivalent",
    "PathBreaks",
    "NotSymmetrizable",
    "NotGCM",
    "NotAGCM",
    "NotKacMoody",
    "Decomposable",
    "InfiniteSystem",
    "NotAnAutomorphism",
    "NotAffine",
    "__version__",
]
