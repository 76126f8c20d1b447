"""Planar convex geometry over exact rationals or floats.

Everything here is a pure function on immutable values.  Coordinates may be
ints, :class:`fractions.Fraction`, or floats.  Containers coerce their
coordinates to a single backend on construction: if any coordinate is a float
the whole object is float, otherwise everything becomes Fraction and all
operations are exact.  The same code paths serve both backends; division goes
through :func:`_div` so that integer inputs never silently truncate or turn
into floats.

Orientation convention: polygon vertices are counterclockwise and strictly
convex (no repeated or collinear consecutive vertices).  Lines are written
``a*x + b*y = c``; for an edge ``p -> q`` of a ccw polygon the normal ``(a, b)``
of ``Line.through(p, q)`` points to the *left*, i.e. into the polygon.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Tuple, Union

from .errors import (
    DegenerateInput,
    EmptyResult,
    ParallelLines,
    SingularMap,
)

Scalar = Union[int, float, Fraction]


def _div(num: Scalar, den: Scalar) -> Scalar:
    """Exact division for rational operands, float division otherwise."""
    if isinstance(num, float) or isinstance(den, float):
        return num / den
    return Fraction(num) / Fraction(den)


def _half(value: Scalar) -> Scalar:
    return _div(value, 2)


class Point(NamedTuple):
    x: Scalar
    y: Scalar

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return Point(-self.x, -self.y)

    def __mul__(self, k):  # type: ignore[override]
        return Point(k * self.x, k * self.y)

    __rmul__ = __mul__

    def dot(self, other) -> Scalar:
        return self.x * other.x + self.y * other.y

    def cross(self, other) -> Scalar:
        return self.x * other.y - self.y * other.x

    def linf(self) -> Scalar:
        return max(abs(self.x), abs(self.y))


def cross3(o: Point, a: Point, b: Point) -> Scalar:
    """Twice the signed area of triangle (o, a, b); positive iff ccw turn."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def midpoint(p: Point, q: Point) -> Point:
    return Point(_half(p.x + q.x), _half(p.y + q.y))


class Line(NamedTuple):
    """Line ``{(x, y) : a*x + b*y = c}`` with ``(a, b) != (0, 0)``."""

    a: Scalar
    b: Scalar
    c: Scalar

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        a = p.y - q.y
        b = q.x - p.x
        if a == 0 and b == 0:
            raise DegenerateInput("line through two identical points")
        return cls(a, b, a * p.x + b * p.y)

    def side(self, p: Point) -> Scalar:
        """Signed residual a*x + b*y - c (positive on the normal side)."""
        return self.a * p.x + self.b * p.y - self.c


def line_intersection(l1: Line, l2: Line) -> Point:
    det = l1.a * l2.b - l2.a * l1.b
    if det == 0:
        raise ParallelLines(f"no unique intersection of {l1} and {l2}")
    x = _div(l1.c * l2.b - l2.c * l1.b, det)
    y = _div(l1.a * l2.c - l2.a * l1.c, det)
    return Point(x, y)


class AffineMap(NamedTuple):
    """Affine map p -> M p + t with M = [[m11, m12], [m21, m22]], t = (t1, t2)."""

    m11: Scalar
    m12: Scalar
    m21: Scalar
    m22: Scalar
    t1: Scalar
    t2: Scalar

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(1, 0, 0, 1, 0, 0)

    @property
    def det(self) -> Scalar:
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, p: Point) -> Point:
        return Point(
            self.m11 * p.x + self.m12 * p.y + self.t1,
            self.m21 * p.x + self.m22 * p.y + self.t2,
        )

    def inverse(self) -> "AffineMap":
        d = self.det
        if d == 0:
            raise SingularMap("affine map is not invertible")
        n11 = _div(self.m22, d)
        n12 = _div(-self.m12, d)
        n21 = _div(-self.m21, d)
        n22 = _div(self.m11, d)
        return AffineMap(
            n11, n12, n21, n22,
            -(n11 * self.t1 + n12 * self.t2),
            -(n21 * self.t1 + n22 * self.t2),
        )

    def compose(self, other: "AffineMap") -> "AffineMap":
        """Map equal to applying ``other`` first, then ``self``."""
        return AffineMap(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
            self.m11 * other.t1 + self.m12 * other.t2 + self.t1,
            self.m21 * other.t1 + self.m22 * other.t2 + self.t2,
        )


def _coerce_points(points: Iterable[Sequence[Scalar]]) -> Tuple[Point, ...]:
    pts = [Point(p[0], p[1]) for p in points]
    if any(isinstance(p.x, float) or isinstance(p.y, float) for p in pts):
        return tuple(Point(float(p.x), float(p.y)) for p in pts)
    return tuple(Point(Fraction(p.x), Fraction(p.y)) for p in pts)


class ConvexPolygon:
    """Strictly convex polygon with counterclockwise vertices.

    Construction validates the invariant: at least 3 vertices, every
    consecutive triple a strict left turn (which also rules out repeated
    vertices).  Coordinates are coerced to one backend, see module docstring.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[Sequence[Scalar]]):
        vs = _coerce_points(vertices)
        n = len(vs)
        if n < 3:
            raise DegenerateInput(f"polygon needs at least 3 vertices, got {n}")
        for i in range(n):
            if cross3(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0:
                raise DegenerateInput(
                    f"vertices are not strictly convex ccw at index {i}"
                )
        self.vertices = vs

    @classmethod
    def _unchecked(cls, vertices: Tuple[Point, ...]) -> "ConvexPolygon":
        # Escape hatch for callers that construct degenerate-by-design values
        # (e.g. a zero-radius ball); such objects support vertex iteration and
        # containment queries but not every polygon operation.
        obj = object.__new__(cls)
        obj.vertices = tuple(vertices)
        return obj

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"ConvexPolygon({list(self.vertices)!r})"

    def __reduce__(self):
        return (_rebuild_polygon, (self.vertices,))

    @property
    def is_exact(self) -> bool:
        return not any(
            isinstance(v.x, float) or isinstance(v.y, float) for v in self.vertices
        )

    @property
    def area(self) -> Scalar:
        vs = self.vertices
        n = len(vs)
        twice = sum(vs[i].cross(vs[(i + 1) % n]) for i in range(n))
        return _half(twice)

    def edges(self):
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            yield vs[i], vs[(i + 1) % n]

    def bounding_box(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def linf_diameter(self) -> Scalar:
        """Max-norm diameter: the larger side of the bounding box."""
        xmin, ymin, xmax, ymax = self.bounding_box()
        return max(xmax - xmin, ymax - ymin)

    def to_float(self) -> "ConvexPolygon":
        if not self.is_exact:
            return self
        # Rounding cannot un-order vertices for the polygons we build, but it
        # can flatten nearly collinear triples, so skip re-validation.
        return ConvexPolygon._unchecked(
            tuple(Point(float(v.x), float(v.y)) for v in self.vertices)
        )

    def to_exact(self) -> "ConvexPolygon":
        if self.is_exact:
            return self
        return ConvexPolygon(
            [(Fraction(v.x), Fraction(v.y)) for v in self.vertices]
        )


def _rebuild_polygon(vertices):
    return ConvexPolygon._unchecked(vertices)


def convex_hull(points: Iterable[Sequence[Scalar]]) -> ConvexPolygon:
    """Convex hull by monotone chain; collinear boundary points are dropped.

    Raises DegenerateInput when the hull has empty interior.
    """
    pts = sorted(set(_coerce_points(points)))
    if len(pts) < 3:
        raise DegenerateInput("hull needs at least 3 distinct points")

    def build(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and cross3(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("points are collinear")
    return ConvexPolygon(hull)


def polygon_area(poly: ConvexPolygon) -> Scalar:
    return poly.area


def contains_point(poly: ConvexPolygon, p: Sequence[Scalar], tol: Scalar = 0) -> bool:
    """Whether ``p`` lies in ``poly``, allowing signed distance ``-tol * diam``.

    ``tol`` is relative to the polygon's max-norm diameter, so the predicate
    is invariant under scaling.  With ``tol = 0`` the test is a pure sign
    check and exact for rational inputs.  The tolerant branch compares squared
    quantities, so it is exact for rational inputs as well.
    """
    q = Point(p[0], p[1])
    if tol == 0:
        return all(cross3(a, b, q) >= 0 for a, b in poly.edges())
    diam = poly.linf_diameter()
    budget = tol * tol * diam * diam
    for a, b in poly.edges():
        c = cross3(a, b, q)
        if c >= 0:
            continue
        e = b - a
        # distance to edge line is |c| / |e|; compare squares to avoid sqrt
        if c * c > budget * e.dot(e):
            return False
    return True


def contains_polygon(
    outer: ConvexPolygon, inner: ConvexPolygon, tol: Scalar = 0
) -> bool:
    return all(contains_point(outer, v, tol) for v in inner.vertices)


def apply_affine(t: AffineMap, poly: ConvexPolygon) -> ConvexPolygon:
    d = t.det
    if d == 0:
        raise SingularMap("cannot apply a singular map to a polygon")
    imgs = [t.apply(v) for v in poly.vertices]
    if d < 0:
        imgs.reverse()
    return ConvexPolygon(imgs)


def _clean_ring(ring):
    """Drop duplicate and collinear consecutive vertices from a convex ring."""
    out = []
    for p in ring:
        if not out or p != out[-1]:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            a = out[i - 1]
            b = out[i]
            c = out[(i + 1) % len(out)]
            if cross3(a, b, c) <= 0:
                del out[i]
                changed = True
                break
    return out


def halfplane_clip(
    poly: ConvexPolygon, line: Line, keep_side: int = 1
) -> ConvexPolygon:
    """Intersect ``poly`` with a halfplane bounded by ``line``.

    ``keep_side=+1`` keeps ``{a*x + b*y <= c}``; ``keep_side=-1`` keeps the
    opposite halfplane.  Raises EmptyResult when the intersection has empty
    interior.
    """
    if keep_side not in (1, -1):
        raise DegenerateInput("keep_side must be +1 or -1")
    vs = poly.vertices
    d = [keep_side * line.side(v) for v in vs]
    out = []
    n = len(vs)
    for i in range(n):
        j = (i + 1) % n
        if d[i] <= 0:
            out.append(vs[i])
        if (d[i] < 0 < d[j]) or (d[j] < 0 < d[i]):
            t = _div(d[i], d[i] - d[j])
            out.append(vs[i] + t * (vs[j] - vs[i]))
    out = _clean_ring(out)
    if len(out) < 3:
        raise EmptyResult("halfplane clip left no interior")
    return ConvexPolygon(out)


def _linf_point_segment(p: Point, a: Point, b: Point) -> Scalar:
    # Minimize max(|w.x - t*u.x|, |w.y - t*u.y|) over t in [0, 1].  The
    # objective is piecewise linear in t, so the minimum sits at an endpoint
    # or where two pieces cross: dx = 0, dy = 0, dx = +-dy.
    u = b - a
    w = p - a
    ts = [0, 1]
    for num, den in (
        (w.x, u.x),
        (w.y, u.y),
        (w.x - w.y, u.x - u.y),
        (w.x + w.y, u.x + u.y),
    ):
        if den != 0:
            t = _div(num, den)
            if 0 < t < 1:
                ts.append(t)
    return min(max(abs(w.x - t * u.x), abs(w.y - t * u.y)) for t in ts)


def linf_distance_to_polygon(p: Sequence[Scalar], poly: ConvexPolygon) -> Scalar:
    """Max-norm distance from ``p`` to the polygon (0 when inside).

    Exact for rational inputs.
    """
    q = Point(p[0], p[1])
    if contains_point(poly, q):
        return 0 if not isinstance(q.x, float) else 0.0
    return min(_linf_point_segment(q, a, b) for a, b in poly.edges())


def linf_ball(center: Sequence[Scalar], radius: Scalar) -> ConvexPolygon:
    """Axis-aligned square ``{q : |q - center|_inf <= radius}``.

    A zero radius yields a single-point degenerate polygon (unchecked).
    """
    c = Point(center[0], center[1])
    if radius == 0:
        (pt,) = _coerce_points([c])
        return ConvexPolygon._unchecked((pt,))
    if radius < 0:
        raise DegenerateInput("negative radius")
    return ConvexPolygon(
        [
            (c.x + radius, c.y + radius),
            (c.x - radius, c.y + radius),
            (c.x - radius, c.y - radius),
            (c.x + radius, c.y - radius),
        ]
    )
