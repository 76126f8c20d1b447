"""Normalization pipeline and the case analysis behind the area bound.

Given a convex body K and a minimum-area circumscribed quadrilateral Q, an
affine map sends the parallelogram spanned by Q's edge midpoints onto the
square [-1, 1]^2.  In those coordinates K touches all four square edges, an
axis-aligned bounding box and a contact octagon are available, and the body
falls into one of a handful of certified cases, each yielding a factor
strictly below 1 for the ratio |Q| / (sqrt(2) |K|).

Everything here works on either numeric backend: exact Fractions flow
through untouched, floats get tolerance-aware comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .constants import TheoremConstants
from .errors import (
    AreaIdentityViolated,
    DegenerateParallelogram,
    DomainError,
    HypothesisViolated,
    InconsistentCase,
    NormalizationViolated,
)
from .geometry import (
    AffineMap,
    ConvexPolygon,
    Line,
    Point,
    Scalar,
    _div,
    apply_affine,
    contains_polygon,
    convex_hull,
    line_intersection,
    linf_ball,
    linf_distance_to_polygon,
)
from .minquad import (
    Quadrilateral,
    SolverOptions,
    min_circumscribed_quadrilateral,
    varignon,
)

HALF = Fraction(1, 2)


def unit_square(exact: bool = True) -> ConvexPolygon:
    """The square [-1, 1]^2, counterclockwise from the bottom-left corner."""
    one = 1 if exact else 1.0
    return ConvexPolygon(
        [(-one, -one), (one, -one), (one, one), (-one, one)]
    )


@dataclass(frozen=True)
class ContactBox:
    """Axis-aligned bounding box of a normalized body, with contact points.

    The box is [a1, b1] x [a2, b2]; v1 and v2 realize the left and bottom
    extremes, w1 and w2 the right and top ones.  For a body normalized to
    touch all four edges of [-1, 1]^2 the invariants a1, a2 <= -1 and
    b1, b2 >= 1 hold (up to solver tolerance); the dataclass itself only
    enforces the structural ties between extremes and contact coordinates.
    """

    a1: Scalar
    a2: Scalar
    b1: Scalar
    b2: Scalar
    v1: Point
    v2: Point
    w1: Point
    w2: Point

    def __post_init__(self):
        if self.a1 > self.b1 or self.a2 > self.b2:
            raise DomainError("bounding box has negative extent")
        checks = (
            (self.v1.x, self.a1, "v1 must lie on the left edge"),
            (self.v2.y, self.a2, "v2 must lie on the bottom edge"),
            (self.w1.x, self.b1, "w1 must lie on the right edge"),
            (self.w2.y, self.b2, "w2 must lie on the top edge"),
        )
        for got, want, msg in checks:
            if got != want:
                raise DomainError(msg)

    @property
    def x(self) -> Scalar:
        """Horizontal box extent b1 - a1."""
        return self.b1 - self.a1

    @property
    def y(self) -> Scalar:
        """Vertical box extent b2 - a2."""
        return self.b2 - self.a2

    @property
    def box_area(self) -> Scalar:
        return self.x * self.y

    @property
    def contacts(self) -> Tuple[Point, Point, Point, Point]:
        return (self.v1, self.v2, self.w1, self.w2)


@dataclass(frozen=True)
class NormalizedScene:
    """A body and quadrilateral after mapping the midpoint square to [-1,1]^2."""

    body: ConvexPolygon
    quad: Quadrilateral
    square: ConvexPolygon


@dataclass(frozen=True)
class OctagonScene:
    """Contact octagon data for a normalized body."""

    square: ConvexPolygon
    contacts: ContactBox
    octagon: ConvexPolygon
    octagon_area: Scalar
    body: ConvexPolygon
    normalizing_map: Optional[AffineMap] = None


def normalize_to_square(
    body: ConvexPolygon, quad: Quadrilateral
) -> Tuple[NormalizedScene, AffineMap]:
    """Map the quadrilateral's midpoint parallelogram onto [-1, 1]^2.

    The parallelogram spanned by Q's edge midpoints is centrally symmetric;
    the affine map taking it to the standard square sends Q to a
    quadrilateral of area 8 * |Q| / |parallelogram| ... in particular the
    area ratio |Q| / |K| is preserved.  Returns the transformed scene and
    the map itself.
    """
    para = varignon(quad)
    verts = para.vertices
    center = Point(
        _div(sum(v.x for v in verts), 4), _div(sum(v.y for v in verts), 4)
    )
    e1 = verts[1] - verts[0]
    e2 = verts[3] - verts[0]
    # Send center + s*e1/... : solve the linear map B taking e1/2+e2/2-combos
    # onto the square's half-diagonals.  Columns of B are the half-edges.
    m11 = _div(e1.x, 2)
    m21 = _div(e1.y, 2)
    m12 = _div(e2.x, 2)
    m22 = _div(e2.y, 2)
    det = m11 * m22 - m12 * m21
    if det == 0:
        raise DegenerateParallelogram("midpoint parallelogram is flat")
    # Invert p -> B p + center; the parallelogram corners then land on the
    # square corners (corner v0 maps to (-1, -1)).
    inv = AffineMap(m11, m12, m21, m22, center.x, center.y).inverse()
    norm_body = apply_affine(inv, body)
    q = tuple(inv.apply(v) for v in quad.vertices)
    norm_quad = Quadrilateral(q, degenerate_triangle=quad.degenerate_triangle)
    scene = NormalizedScene(
        body=norm_body, quad=norm_quad, square=unit_square(norm_body.is_exact)
    )
    return scene, inv


def axis_box_with_contacts(
    body: ConvexPolygon, tol: Scalar = 0
) -> ContactBox:
    """Bounding box and contact points of a body normalized to [-1,1]^2.

    Requires the box to cover the unit square up to ``tol`` per side; raises
    :class:`NormalizationViolated` otherwise.  When several vertices attain
    an extreme, the contact with the smallest absolute value of the other
    coordinate is chosen (ties broken toward the smaller signed value), so
    the result is deterministic and reflection-friendly.
    """
    vs = body.vertices
    a1 = min(v.x for v in vs)
    b1 = max(v.x for v in vs)
    a2 = min(v.y for v in vs)
    b2 = max(v.y for v in vs)
    if a1 > -1 + tol or a2 > -1 + tol or b1 < 1 - tol or b2 < 1 - tol:
        raise NormalizationViolated(
            "bounding box does not cover the unit square: "
            f"[{a1}, {b1}] x [{a2}, {b2}]"
        )

    def pick(cands: List[Point], other: int) -> Point:
        return min(cands, key=lambda p: (abs(p[other]), p[other]))

    v1 = pick([v for v in vs if v.x == a1], 1)
    w1 = pick([v for v in vs if v.x == b1], 1)
    v2 = pick([v for v in vs if v.y == a2], 0)
    w2 = pick([v for v in vs if v.y == b2], 0)
    return ContactBox(a1=a1, a2=a2, b1=b1, b2=b2, v1=v1, v2=v2, w1=w1, w2=w2)


def build_octagon(
    body: ConvexPolygon,
    contacts: ContactBox,
    tol: Scalar = 0,
    normalizing_map: Optional[AffineMap] = None,
) -> OctagonScene:
    """Convex hull of the unit square and the four box contacts.

    Checks the area identity |octagon| = x + y (box extents) and, when the
    contacts genuinely come from ``body``, that the octagon sits inside it.
    Exact inputs are checked exactly; float inputs up to ``tol``.
    """
    square = unit_square(body.is_exact)
    pts = list(square.vertices) + list(contacts.contacts)
    octagon = convex_hull(pts)
    area = octagon.area
    ident = contacts.x + contacts.y
    if octagon.is_exact:
        if area != ident:
            raise AreaIdentityViolated(
                f"octagon area {area} != box half-perimeter {ident}"
            )
    else:
        scale = max(1.0, abs(float(ident)))
        if abs(float(area) - float(ident)) > max(float(tol), 1e-9) * scale:
            raise AreaIdentityViolated(
                f"octagon area {area} != box half-perimeter {ident}"
            )
    if not contains_polygon(body, octagon, tol):
        raise NormalizationViolated("contact octagon escapes the body")
    return OctagonScene(
        square=square,
        contacts=contacts,
        octagon=octagon,
        octagon_area=area,
        body=body,
        normalizing_map=normalizing_map,
    )


def apply_contact_reflections(
    contacts: ContactBox, flip_x: bool, flip_y: bool
) -> ContactBox:
    """Reflect a contact configuration across the coordinate axes.

    Reflections of the plane fix the unit square setwise, so they act on
    normalized scenes; flipping twice returns the original configuration.
    """
    def fx(p: Point) -> Point:
        return Point(-p.x, p.y) if flip_x else p

    def fy(p: Point) -> Point:
        return Point(p.x, -p.y) if flip_y else p

    v1, w1 = contacts.v1, contacts.w1
    a1, b1 = contacts.a1, contacts.b1
    if flip_x:
        v1, w1 = w1, v1
        a1, b1 = -b1, -a1
    v2, w2 = contacts.v2, contacts.w2
    a2, b2 = contacts.a2, contacts.b2
    if flip_y:
        v2, w2 = w2, v2
        a2, b2 = -b2, -a2
    return ContactBox(
        a1=a1,
        a2=a2,
        b1=b1,
        b2=b2,
        v1=fy(fx(v1)),
        v2=fy(fx(v2)),
        w1=fy(fx(w1)),
        w2=fy(fx(w2)),
    )


def reflection_normalize(
    contacts: ContactBox,
) -> Tuple[ContactBox, Tuple[bool, bool]]:
    """Flip axes so the left/bottom contacts are the shallow ones.

    After normalization -a1 <= b1 and -a2 <= b2, i.e. the v-side extremes
    are at most as deep as the w-side ones.  Returns the new configuration
    and the (flip_x, flip_y) flags applied (an involution: applying the
    same flags again restores the input).
    """
    flip_x = -contacts.a1 > contacts.b1
    flip_y = -contacts.a2 > contacts.b2
    return apply_contact_reflections(contacts, flip_x, flip_y), (flip_x, flip_y)


class LemmaBranch(Enum):
    """Which cut construction produced the small covering quadrilateral.

    The branch names the square edge through which the slanted cut line
    passes: U_TOP when the right contact sits low (below the tilt band),
    U_BOTTOM when it sits high, U_RIGHT / U_LEFT for the transposed cases
    driven by the top contact, and MIDPOINT_CASE when both contacts are
    inside their bands and the two balanced cut lines are intersected.
    """

    U_TOP = "u-top"
    U_BOTTOM = "u-bottom"
    U_RIGHT = "u-right"
    U_LEFT = "u-left"
    MIDPOINT_CASE = "midpoint-case"


def _ccw(vertices: Sequence[Tuple[Scalar, Scalar]]) -> ConvexPolygon:
    poly = convex_hull(list(vertices))
    if len(poly) != len(vertices):
        raise HypothesisViolated(
            "cut quadrilateral degenerated while assembling branch vertices"
        )
    return poly


def lemma_octagon_quad(
    contacts: ContactBox,
    c: Scalar,
    delta: Scalar,
    tol: Scalar = 0,
) -> Tuple[ConvexPolygon, LemmaBranch]:
    """Small quadrilateral containing hull(square corners, contacts).

    Input is a reflection-normalized contact configuration whose box
    extents both fit in a c-by-c square anchored at the deep corner
    (b1 - a1 <= c and b2 - a2 <= c with the anchor at (a1, a2)); the off-axis
    coordinates of the contacts must lie in [-1, 1] and the extremes beyond
    the square edges.  Hypotheses are checked up to ``tol`` and violations
    raise :class:`HypothesisViolated` naming the failed inequality.

    Returns the covering quadrilateral and the branch taken.  In every
    branch the quadrilateral contains the hull of the unit square and the
    four contacts, and its area obeys the closed-form branch bound.
    """
    x1, y2 = contacts.a1, contacts.a2
    v1, v2, w1, w2 = contacts.v1, contacts.v2, contacts.w1, contacts.w2
    if not (c >= Fraction(14, 5) - tol):
        raise DomainError("cut size c must be at least 14/5")
    if not (-tol <= delta <= Fraction(1, 10) + tol):
        raise DomainError("tilt parameter delta must lie in [0, 1/10]")

    checks = (
        (-v1.y <= 1 + tol and v1.y <= 1 + tol, "|v1_y| <= 1"),
        (-v2.x <= 1 + tol and v2.x <= 1 + tol, "|v2_x| <= 1"),
        (-w1.y <= 1 + tol and w1.y <= 1 + tol, "|w1_y| <= 1"),
        (-w2.x <= 1 + tol and w2.x <= 1 + tol, "|w2_x| <= 1"),
        (x1 <= -1 + tol, "a1 <= -1"),
        (y2 <= -1 + tol, "a2 <= -1"),
        (contacts.b1 >= 1 - tol, "b1 >= 1"),
        (contacts.b2 >= 1 - tol, "b2 >= 1"),
        (-x1 <= contacts.b1 + tol, "-a1 <= b1 (reflection-normalized)"),
        (-y2 <= contacts.b2 + tol, "-a2 <= b2 (reflection-normalized)"),
        (contacts.b1 - x1 <= c + tol, "b1 - a1 <= c"),
        (contacts.b2 - y2 <= c + tol, "b2 - a2 <= c"),
    )
    for ok, label in checks:
        if not ok:
            raise HypothesisViolated(f"hypothesis {label} fails")

    lo_y = y2 + (HALF - delta) * c
    hi_y = y2 + (HALF + delta) * c
    lo_x = x1 + (HALF - delta) * c
    hi_x = x1 + (HALF + delta) * c

    if w1.y < lo_y:
        X = 1 + _div(x1 + c - 1, HALF + delta)
        quad = _ccw([(x1, y2), (X, y2), (1, y2 + c), (x1, y2 + c)])
        return quad, LemmaBranch.U_TOP
    if w1.y > hi_y:
        X = 1 + _div(x1 + c - 1, HALF + delta)
        quad = _ccw([(x1, y2), (1, y2), (X, y2 + c), (x1, y2 + c)])
        return quad, LemmaBranch.U_BOTTOM
    if w2.x < lo_x:
        Y = 1 + _div(y2 + c - 1, HALF + delta)
        quad = _ccw([(x1, y2), (x1 + c, y2), (x1 + c, 1), (x1, Y)])
        return quad, LemmaBranch.U_RIGHT
    if w2.x > hi_x:
        Y = 1 + _div(y2 + c - 1, HALF + delta)
        quad = _ccw([(x1, y2), (x1 + c, y2), (x1 + c, Y), (x1, 1)])
        return quad, LemmaBranch.U_LEFT

    # Both contacts inside their tilt bands: intersect the two balanced cut
    # lines.  The first rises from (1, y2) toward w1, the second descends
    # through (x1 + c, y2 + 4c/5); their crossing is the far corner.
    slope1 = _div((HALF - delta) * c, x1 + c - 1)
    line1 = Line(slope1, -1, slope1 * 1 - y2)
    slope2 = _div(-1, 5 * (HALF - delta))
    anchor_y = y2 + _div(4 * c, 5)
    line2 = Line(slope2, -1, slope2 * (x1 + c) - anchor_y)
    far = line_intersection(line1, line2)
    top = Point(x1, _div(c, 5 * (HALF - delta)) + anchor_y)
    quad = _ccw([(x1, y2), (1, y2), (far.x, far.y), (top.x, top.y)])
    return quad, LemmaBranch.MIDPOINT_CASE


def outer_ball_check(quad: Quadrilateral, tol: Scalar = 0) -> bool:
    """True when every vertex of the quadrilateral lies in 3 * [-1,1]^2.

    Meaningful for quadrilaterals whose midpoint parallelogram is the unit
    square; minimality then forces the vertices into the tripled square.
    """
    return all(v.linf() <= 3 + tol for v in quad.vertices)


def inner_ball_inclusion(
    v: Point, R: Scalar, r: Scalar
) -> Tuple[ConvexPolygon, ConvexPolygon, ConvexPolygon]:
    """Witness polygons for the shrunken-ball inclusion around a far vertex.

    For a point v with sup-norm at most R and radii 0 <= r <= R + 1, the
    square of radius lam = r / (R + 1) centered at (1 - lam) v sits inside
    both hull([-1,1]^2, v) and the square of radius r around v.  Returns
    (small square, hull, ball around v); callers verify containment.
    """
    v = Point(*v)
    if v.linf() > R:
        raise DomainError("vertex lies outside the stated sup-norm bound")
    if r < 0 or r > R + 1:
        raise DomainError("radius must lie in [0, R + 1]")
    lam = _div(r, R + 1)
    center = Point((1 - lam) * v.x, (1 - lam) * v.y)
    small = linf_ball(center, lam)
    one = 1 if isinstance(v.x, (int, Fraction)) and isinstance(
        v.y, (int, Fraction)
    ) else 1.0
    corners = [(-one, -one), (one, -one), (one, one), (-one, one)]
    hull = convex_hull(corners + [(v.x, v.y)])
    ball = linf_ball(v, r)
    return small, hull, ball


class CaseId(Enum):
    """Which certified case of the area bound fired."""

    BOX_LARGE = "box-large"
    BOX_SKEWED = "box-skewed"
    BODY_EXCEEDS_OCTAGON = "body-exceeds-octagon"
    OCTAGON_IMPROVED = "octagon-improved"
    DEGENERATE_TRIANGLE = "degenerate-triangle"


@dataclass(frozen=True)
class CaseReport:
    """Outcome of running the case machine on one body."""

    case_id: CaseId
    certified_factor: float
    witness: Quadrilateral
    empirical_ratio: float
    details: Dict[str, object] = field(default_factory=dict)


def case_machine(
    body: ConvexPolygon,
    consts: Optional[TheoremConstants] = None,
    options: Optional[SolverOptions] = None,
) -> CaseReport:
    """Classify a body into a certified case of the improved area bound.

    Solves for the minimum circumscribed quadrilateral, normalizes the
    midpoint parallelogram to [-1, 1]^2, and walks the case ladder:

    1. box area x*y > 8*c1: the AM-GM step in the sqrt(2) chain is slack.
    2. box skewed (x > c2*y or y > c2*x): same slack, via the skew margin.
    3. some body vertex further than r (sup-norm) from the contact
       octagon: the octagon undersells the body area.
    4. otherwise the cut construction shrinks the covering quadrilateral
       below 8 directly; the consistency guard (1+r)^2 |cut quad| < 8
       must hold, else :class:`InconsistentCase`.

    Thresholds are tested with a slack of 10 * solver tolerance so that
    borderline bodies fall into the case whose certificate is robust.
    Triangle-degenerate minimizers short-circuit to the exact factor
    1/sqrt(2).
    """
    consts = consts or TheoremConstants()
    opts = options or SolverOptions()
    slack = 10 * opts.tol

    quad, cert = min_circumscribed_quadrilateral(body, opts)
    ratio = float(cert.area_ratio)
    if quad.degenerate_triangle:
        return CaseReport(
            case_id=CaseId.DEGENERATE_TRIANGLE,
            certified_factor=1.0 / math.sqrt(2.0),
            witness=quad,
            empirical_ratio=ratio,
            details={},
        )

    scene, norm_map = normalize_to_square(body.to_float(), quad.to_float())
    case_id, factor, details = _classify_normalized(scene.body, consts, slack)
    details["normalizing_map"] = norm_map
    return CaseReport(
        case_id=case_id,
        certified_factor=factor,
        witness=quad,
        empirical_ratio=ratio,
        details=details,
    )


def _classify_normalized(
    norm_body: ConvexPolygon, consts: TheoremConstants, slack: float
) -> Tuple[CaseId, float, Dict[str, object]]:
    """Case ladder on a body already normalized to touch [-1, 1]^2."""
    contacts = axis_box_with_contacts(norm_body, tol=slack)
    f1, f2, f3 = consts.case_factors()
    c1 = float(consts.c1)
    c2 = consts.c2_value()
    r = consts.r_value()
    x, y = float(contacts.x), float(contacts.y)
    details: Dict[str, object] = {"x": x, "y": y, "box_area": x * y}

    if x * y > 8 * c1 + slack:
        return CaseId.BOX_LARGE, f1, details
    if x > c2 * y + slack or y > c2 * x + slack:
        return CaseId.BOX_SKEWED, f2, details

    scene8 = build_octagon(norm_body, contacts, tol=slack)
    gap = max(
        float(linf_distance_to_polygon(v, scene8.octagon))
        for v in norm_body.vertices
    )
    details["octagon_area"] = float(scene8.octagon_area)
    details["max_octagon_gap"] = gap
    if gap > r + slack:
        return CaseId.BODY_EXCEEDS_OCTAGON, f3, details

    # Remaining configuration: round box, body hugging the contact octagon.
    # The cut construction then beats area 8, which contradicts minimality
    # of the normalizing quadrilateral; reachable only through slack.
    normed, flips = reflection_normalize(contacts)
    cut_quad, branch = lemma_octagon_quad(
        normed, c=float(consts.c3), delta=float(consts.delta), tol=slack
    )
    cut_area = float(cut_quad.area)
    if (1 + r) ** 2 * cut_area >= 8:
        raise InconsistentCase(
            "dilated cut quadrilateral fails the strict area-8 guard: "
            f"(1+r)^2 * {cut_area} >= 8"
        )
    details["lemma_branch"] = branch
    details["reflections"] = flips
    details["cut_quad_area"] = cut_area
    return CaseId.OCTAGON_IMPROVED, min(f1, f2, f3), details
