"""Minimum-area circumscribed quadrilaterals of planar convex bodies.

Every convex body K admits a circumscribed quadrilateral of area strictly
below (1 - 2.6e-7) * sqrt(2) * |K|.  This package provides the numerical
solver for the minimum quadrilateral, the normalization pipeline and case
analysis behind that bound, exact evaluation of the cut-area function, and
interval-arithmetic certification of the constants involved.
"""

from .constants import TheoremConstants, certify_constants
from .corpus import gen_corpus, regular_polygon
from .errors import (
    AreaIdentityViolated,
    BadParams,
    CircumquadError,
    DegenerateBody,
    DegenerateInput,
    DegenerateParallelogram,
    DivisionByIntervalContainingZero,
    DomainError,
    EmptyResult,
    HypothesisViolated,
    InconsistentCase,
    NegativeRadicand,
    NoFeasibleQuadruple,
    NormalizationViolated,
    ParallelLines,
    SingularMap,
    SolverFailure,
)
from .geometry import (
    AffineMap,
    ConvexPolygon,
    Line,
    Point,
    apply_affine,
    contains_point,
    contains_polygon,
    convex_hull,
    halfplane_clip,
    line_intersection,
    linf_ball,
    linf_distance_to_polygon,
    polygon_area,
)
from .intervals import (
    CertifiedComparison,
    Expr,
    Interval,
    Verdict,
    certify_equal_exact,
    certify_less,
    const,
    esqrt,
    sqrt_enclosure,
)
from .minquad import (
    CircumscriptionCertificate,
    Quadrilateral,
    SolverOptions,
    brute_force_min_quad,
    midpoint_certificate,
    min_circumscribed_quadrilateral,
    varignon,
)
from .pipeline import (
    CaseId,
    CaseReport,
    ContactBox,
    LemmaBranch,
    NormalizedScene,
    OctagonScene,
    apply_contact_reflections,
    axis_box_with_contacts,
    build_octagon,
    case_machine,
    inner_ball_inclusion,
    lemma_octagon_quad,
    normalize_to_square,
    outer_ball_check,
    reflection_normalize,
    unit_square,
)
from .zeta import (
    ZetaParams,
    zeta,
    zeta_bound,
    zeta_derivative,
    zeta_derivative_roots,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "AreaIdentityViolated",
    "BadParams",
    "CaseId",
    "CaseReport",
    "CertifiedComparison",
    "CircumquadError",
    "CircumscriptionCertificate",
    "ContactBox",
    "ConvexPolygon",
    "DegenerateBody",
    "DegenerateInput",
    "DegenerateParallelogram",
    "DivisionByIntervalContainingZero",
    "DomainError",
    "EmptyResult",
    "Expr",
    "HypothesisViolated",
    "InconsistentCase",
    "Interval",
    "LemmaBranch",
    "Line",
    "NegativeRadicand",
    "NoFeasibleQuadruple",
    "NormalizationViolated",
    "NormalizedScene",
    "OctagonScene",
    "ParallelLines",
    "Point",
    "Quadrilateral",
    "SingularMap",
    "SolverFailure",
    "SolverOptions",
    "TheoremConstants",
    "Verdict",
    "ZetaParams",
    "apply_affine",
    "apply_contact_reflections",
    "axis_box_with_contacts",
    "brute_force_min_quad",
    "build_octagon",
    "case_machine",
    "certify_constants",
    "certify_equal_exact",
    "certify_less",
    "const",
    "contains_point",
    "contains_polygon",
    "convex_hull",
    "esqrt",
    "gen_corpus",
    "halfplane_clip",
    "inner_ball_inclusion",
    "lemma_octagon_quad",
    "line_intersection",
    "linf_ball",
    "linf_distance_to_polygon",
    "midpoint_certificate",
    "min_circumscribed_quadrilateral",
    "normalize_to_square",
    "outer_ball_check",
    "polygon_area",
    "regular_polygon",
    "sqrt_enclosure",
    "unit_square",
    "varignon",
    "zeta",
    "zeta_bound",
    "zeta_derivative",
    "zeta_derivative_roots",
]
