"""Exact barycentric triangle geometry.

A kernel for homogeneous barycentric computation over Q and real quadratic
extensions Q(sqrt(d)), the conic constructions attached to a driving point
(cevian conic, circumconic with given center, inconic, nine-point conics),
and a zero-tolerance verifier for the theorems relating them.
"""

from .scalar import (
    Scalar,
    solve_quadratic,
    sqrt_in_field,
    TwoRoots,
    DoubleRoot,
    Linear,
    NeedsExtension,
    NoRealRoots,
)
from .projective import (
    AffineMap,
    Line,
    Point,
    anticomplement,
    complement,
    complement_map,
    isotomic,
    join,
    meet,
    midpoint,
)
from .conics import (
    Conic,
    circumconic_with_center,
    conic_through_five,
    inconic_with_contacts,
    nine_point_conic,
    steiner_circumellipse,
)
from .constructions import (
    ConstructionSet,
    anticevian_family,
    construct,
    degeneracy_report,
    locus_conic,
    sample_nondegenerate,
    special_configuration,
    special_configuration_point,
)
from .verify import run_check, run_suite, DOCUMENTED_CHECKS

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "Conic",
    "ConstructionSet",
    "DOCUMENTED_CHECKS",
    "DoubleRoot",
    "Line",
    "Linear",
    "NeedsExtension",
    "NoRealRoots",
    "Point",
    "Scalar",
    "TwoRoots",
    "anticevian_family",
    "anticomplement",
    "circumconic_with_center",
    "complement",
    "complement_map",
    "conic_through_five",
    "construct",
    "degeneracy_report",
    "inconic_with_contacts",
    "isotomic",
    "join",
    "locus_conic",
    "meet",
    "midpoint",
    "nine_point_conic",
    "run_check",
    "run_suite",
    "sample_nondegenerate",
    "solve_quadratic",
    "special_configuration",
    "special_configuration_point",
    "sqrt_in_field",
    "steiner_circumellipse",
]
