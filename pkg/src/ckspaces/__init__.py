"""Cayley-Klein algebras, their symmetric spaces of rank one and two, and
the invariant metrics, curvatures and foliations that come with them."""

from .core import (
    BracketResult,
    GeneratorIndex,
    OmegaSignature,
    bracket,
    canonical_signatures,
    ck_cosine,
    ck_sine,
    generators,
    omega_product,
    parse_signature,
)
from .errors import (
    CKError,
    ChartDomainError,
    ConstraintViolation,
    DegenerateLineError,
    DegenerateMetricError,
    DegeneratePlaneError,
    SingularLocusError,
    UnsupportedDimensionError,
)

__version__ = "0.1.0"

__all__ = [
    "BracketResult",
    "CKError",
    "ChartDomainError",
    "ConstraintViolation",
    "DegenerateLineError",
    "DegenerateMetricError",
    "DegeneratePlaneError",
    "GeneratorIndex",
    "OmegaSignature",
    "SingularLocusError",
    "UnsupportedDimensionError",
    "__version__",
    "bracket",
    "canonical_signatures",
    "ck_cosine",
    "ck_sine",
    "generators",
    "omega_product",
    "parse_signature",
]
