"""Exact integer-arithmetic planar geometry.

Orientation, segment-pair classification, point-in-polygon, and pairwise
visibility inside a simple polygon. Every predicate works on integer
coordinates only; no floating point appears anywhere in this module, so all
answers are exact. Touching counts as intersecting throughout: a segment that
merely grazes the polygon boundary "hits" it.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum

from .errors import ValidationError

# Inputs beyond this bound are rejected at parse time; everything the package
# generates stays far below it.
COORD_LIMIT = 2**31 - 1


@dataclass(frozen=True, order=True)
class Point:
    x: int
    y: int


class Orientation(Enum):
    CCW = "ccw"
    CW = "cw"
    COLLINEAR = "collinear"


def cross(a: Point, b: Point, c: Point) -> int:
    """Signed cross product (b - a) x (c - a): twice the triangle area."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orient2d(a: Point, b: Point, c: Point) -> Orientation:
    """Turn direction of the path a -> b -> c."""
    d = cross(a, b, c)
    if d > 0:
        return Orientation.CCW
    if d < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def on_segment(a: Point, b: Point, p: Point) -> bool:
    """True iff p lies on the closed segment ab (endpoints included)."""
    if cross(a, b, p) != 0:
        return False
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValidationError(
                "DegenerateSegment", f"segment endpoints coincide at {self.a}"
            )


class SegmentRelationKind(Enum):
    DISJOINT = "disjoint"
    PROPER_CROSSING = "proper_crossing"
    TOUCH_AT_ENDPOINT = "touch_at_endpoint"
    ENDPOINT_ON_INTERIOR = "endpoint_on_interior"
    COLLINEAR_OVERLAP = "collinear_overlap"


@dataclass(frozen=True)
class SegmentRelation:
    """How two closed segments meet; ``point`` is the contact witness.

    ``point`` is the shared endpoint for TOUCH_AT_ENDPOINT and the offending
    endpoint for ENDPOINT_ON_INTERIOR; None for the other kinds.
    """

    kind: SegmentRelationKind
    point: Point | None = None


_DISJOINT = SegmentRelation(SegmentRelationKind.DISJOINT)
_CROSSING = SegmentRelation(SegmentRelationKind.PROPER_CROSSING)
_OVERLAP = SegmentRelation(SegmentRelationKind.COLLINEAR_OVERLAP)


def _in_box(a: Point, b: Point, p: Point) -> bool:
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _classify_collinear(a: Point, b: Point, c: Point, d: Point) -> SegmentRelation:
    # All four points are on one line; compare 1-D intervals along the
    # dominant axis of that line.
    if a.x != b.x:
        ka, kb, kc, kd = a.x, b.x, c.x, d.x
    else:
        ka, kb, kc, kd = a.y, b.y, c.y, d.y
    s_lo, s_hi = (ka, kb) if ka <= kb else (kb, ka)
    t_lo, t_hi = (kc, kd) if kc <= kd else (kd, kc)
    lo = max(s_lo, t_lo)
    hi = min(s_hi, t_hi)
    if lo > hi:
        return _DISJOINT
    if lo == hi:
        # Single-point contact on a common line is necessarily an
        # endpoint-to-endpoint touch.
        shared = c if kc == lo else d
        return SegmentRelation(SegmentRelationKind.TOUCH_AT_ENDPOINT, shared)
    return _OVERLAP


def classify_segments(s: Segment, t: Segment) -> SegmentRelation:
    """Classify how two non-degenerate closed segments meet.

    The five kinds are mutually exclusive and exhaustive: two segments are
    disjoint, cross properly at an interior point, touch at a shared
    endpoint, have one segment's endpoint in the other's relative interior,
    or overlap along a positive-length collinear stretch.
    """
    a, b = s.a, s.b
    c, d = t.a, t.b
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    if d1 == 0 and d2 == 0:
        return _classify_collinear(a, b, c, d)
    # Non-collinear segments meet in at most one point, so a shared endpoint
    # is the whole intersection.
    if c == a or c == b:
        return SegmentRelation(SegmentRelationKind.TOUCH_AT_ENDPOINT, c)
    if d == a or d == b:
        return SegmentRelation(SegmentRelationKind.TOUCH_AT_ENDPOINT, d)
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    if d1 == 0 and _in_box(a, b, c):
        return SegmentRelation(SegmentRelationKind.ENDPOINT_ON_INTERIOR, c)
    if d2 == 0 and _in_box(a, b, d):
        return SegmentRelation(SegmentRelationKind.ENDPOINT_ON_INTERIOR, d)
    if d3 == 0 and _in_box(c, d, a):
        return SegmentRelation(SegmentRelationKind.ENDPOINT_ON_INTERIOR, a)
    if d4 == 0 and _in_box(c, d, b):
        return SegmentRelation(SegmentRelationKind.ENDPOINT_ON_INTERIOR, b)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return _CROSSING
    return _DISJOINT


@dataclass(frozen=True)
class SimplePolygon:
    """A closed polygonal cycle; simplicity is checked by :func:`is_simple`.

    Construction only enforces the cheap structural invariants (at least
    three vertices, no two consecutive vertices equal) so that candidate
    polygons can be built and *then* tested or normalized.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        k = len(self.vertices)
        if k < 3:
            raise ValidationError(
                "TooFewVertices", f"polygon needs at least 3 vertices, got {k}"
            )
        for i, v in enumerate(self.vertices):
            if v == self.vertices[(i + 1) % k]:
                raise ValidationError(
                    "DuplicateConsecutiveVertex",
                    f"vertices {i} and {(i + 1) % k} coincide at {v}",
                )

    @functools.cached_property
    def edge_segments(self) -> tuple[Segment, ...]:
        verts = self.vertices
        k = len(verts)
        return tuple(Segment(verts[i], verts[(i + 1) % k]) for i in range(k))


def signed_area2(polygon: SimplePolygon) -> int:
    """Twice the signed area; positive for counter-clockwise cycles."""
    total = 0
    verts = polygon.vertices
    for i, a in enumerate(verts):
        b = verts[(i + 1) % len(verts)]
        total += a.x * b.y - b.x * a.y
    return total


@functools.lru_cache(maxsize=512)
def _is_simple_cached(vertices: tuple[Point, ...]) -> bool:
    k = len(vertices)
    edges = [Segment(vertices[i], vertices[(i + 1) % k]) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = (j == i + 1) or (i == 0 and j == k - 1)
            rel = classify_segments(edges[i], edges[j])
            if adjacent:
                if rel.kind is not SegmentRelationKind.TOUCH_AT_ENDPOINT:
                    return False
            elif rel.kind is not SegmentRelationKind.DISJOINT:
                return False
    return True


def is_simple(polygon: SimplePolygon) -> bool:
    """True iff no two non-adjacent edges intersect and adjacent edges meet
    only at their shared vertex."""
    return _is_simple_cached(polygon.vertices)


def ensure_simple(polygon: SimplePolygon) -> None:
    if not is_simple(polygon):
        raise ValidationError("PolygonNotSimple", "polygon boundary self-intersects")


def normalize_ccw(polygon: SimplePolygon) -> SimplePolygon:
    """Return the same vertex cycle oriented counter-clockwise.

    The first vertex is kept in place so the result is deterministic.
    """
    ensure_simple(polygon)
    if signed_area2(polygon) > 0:
        return polygon
    verts = polygon.vertices
    return SimplePolygon((verts[0],) + tuple(reversed(verts[1:])))


class PointLocation(Enum):
    INSIDE = "inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


def point_in_polygon(p: Point, polygon: SimplePolygon) -> PointLocation:
    """Exact location of p relative to a simple polygon.

    Boundary incidence is detected first; interiority then follows from the
    crossing number of a rightward ray, computed without any division.
    """
    ensure_simple(polygon)
    verts = polygon.vertices
    k = len(verts)
    for i in range(k):
        if on_segment(verts[i], verts[(i + 1) % k], p):
            return PointLocation.ON_BOUNDARY
    inside = False
    for i in range(k):
        a = verts[i]
        b = verts[(i + 1) % k]
        if (a.y > p.y) != (b.y > p.y):
            # The edge straddles the horizontal through p; the rightward ray
            # crosses it iff the intersection lies right of p, which reduces
            # to a sign test on the cross product.
            if (cross(a, b, p) > 0) == (b.y > a.y):
                inside = not inside
    return PointLocation.INSIDE if inside else PointLocation.OUTSIDE


def segment_hits_boundary(s: Segment, polygon: SimplePolygon) -> bool:
    """True iff the closed segment shares at least one point with the
    polygon's boundary polyline. Grazing contact counts."""
    ensure_simple(polygon)
    s_minx, s_maxx = (s.a.x, s.b.x) if s.a.x <= s.b.x else (s.b.x, s.a.x)
    s_miny, s_maxy = (s.a.y, s.b.y) if s.a.y <= s.b.y else (s.b.y, s.a.y)
    for edge in polygon.edge_segments:
        e_minx, e_maxx = (edge.a.x, edge.b.x) if edge.a.x <= edge.b.x else (edge.b.x, edge.a.x)
        if e_minx > s_maxx or e_maxx < s_minx:
            continue
        e_miny, e_maxy = (edge.a.y, edge.b.y) if edge.a.y <= edge.b.y else (edge.b.y, edge.a.y)
        if e_miny > s_maxy or e_maxy < s_miny:
            continue
        if classify_segments(s, edge).kind is not SegmentRelationKind.DISJOINT:
            return True
    return False


def visible(p: Point, q: Point, polygon: SimplePolygon) -> bool:
    """Two strictly interior points see each other iff the segment between
    them never meets the boundary, grazing included.

    Raises for endpoints that are not strictly inside; boundary points get
    no visibility convention here because no caller needs one.
    """
    ensure_simple(polygon)
    for name, pt in (("p", p), ("q", q)):
        if point_in_polygon(pt, polygon) is not PointLocation.INSIDE:
            raise ValidationError(
                "PointNotStrictlyInside",
                f"visibility endpoint {name}={pt} is not strictly inside the polygon",
            )
    return not segment_hits_boundary(Segment(p, q), polygon)
