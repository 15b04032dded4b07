"""Certificate checking for straight-line tree embeddings.

A mapping is valid when it is a bijection, edge images that share a tree node
touch only at that node's image, edge images that share no node are fully
disjoint, no edge passes through any other mapped point, and (in the
polygon-bounded variant) no edge touches the polygon boundary.

Reports list every violation in a canonical order instead of stopping at the
first, so callers can assert on specific failure kinds. The pairwise pass
runs behind an interval sweep over x so large instances stay polynomial with
small constants; every surviving candidate pair is decided exactly.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections.abc import Sequence

from .errors import ValidationError
from .geometry import (
    Segment,
    SegmentRelationKind,
    classify_segments,
    cross,
    segment_hits_boundary,
)
from .model import (
    Embedding,
    EmbeddingInstance,
    FreeTree,
    PointSet,
    VerificationReport,
    Violation,
)

KIND_NOT_BIJECTION = "NotBijection"
KIND_EDGE_CROSSES_EDGE = "EdgeCrossesEdge"
KIND_EDGES_OVERLAP = "EdgesOverlapAtSegment"
KIND_EDGE_HITS_BOUNDARY = "EdgeHitsBoundary"
KIND_EDGE_THROUGH_POINT = "EdgeThroughMappedPoint"


def verify_embedding(
    instance: EmbeddingInstance, embedding: Embedding | Sequence[int]
) -> VerificationReport:
    """Full check including the polygon-boundary condition."""
    return _verify(instance.tree, instance.points, embedding, instance.polygon)


def verify_planar_only(
    tree: FreeTree, points: PointSet, embedding: Embedding | Sequence[int]
) -> VerificationReport:
    """Planarity check without any bounding polygon."""
    return _verify(tree, points, embedding, None)


def _as_mapping(tree: FreeTree, embedding) -> tuple[tuple[int, ...], bool]:
    if isinstance(embedding, Embedding):
        mapping = embedding.mapping
        bijective = True
    else:
        mapping = tuple(int(v) for v in embedding)
        bijective = sorted(mapping) == list(range(len(mapping)))
    if len(mapping) != tree.node_count:
        raise ValidationError(
            "MappingLengthMismatch",
            f"mapping covers {len(mapping)} nodes, tree has {tree.node_count}",
        )
    return mapping, bijective


def _verify(tree, points, embedding, polygon) -> VerificationReport:
    mapping, bijective = _as_mapping(tree, embedding)
    if not bijective:
        counts: dict[int, int] = {}
        for v in mapping:
            counts[v] = counts.get(v, 0) + 1
        offenders = sorted(
            v for v, c in counts.items() if c > 1 or not 0 <= v < len(points)
        )
        return VerificationReport.from_violations(
            [Violation(KIND_NOT_BIJECTION, points=tuple(offenders))]
        )

    pts = points.points
    violations: set[Violation] = set()

    # (minx, maxx, miny, maxy, edge_index, node_u, node_v, Segment)
    segs = []
    for idx, (u, v) in enumerate(tree.edges):
        pa, pb = pts[mapping[u]], pts[mapping[v]]
        minx, maxx = (pa.x, pb.x) if pa.x <= pb.x else (pb.x, pa.x)
        miny, maxy = (pa.y, pb.y) if pa.y <= pb.y else (pb.y, pa.y)
        segs.append((minx, maxx, miny, maxy, idx, u, v, Segment(pa, pb)))

    if polygon is not None:
        for minx, maxx, miny, maxy, idx, u, v, seg in segs:
            if segment_hits_boundary(seg, polygon):
                violations.add(Violation(KIND_EDGE_HITS_BOUNDARY, edges=(idx,)))

    _check_edge_pairs(segs, mapping, violations)
    _check_points_on_edges(segs, mapping, pts, violations)
    return VerificationReport.from_violations(violations)


def _check_edge_pairs(segs, mapping, violations) -> None:
    ordered = sorted(segs, key=lambda rec: rec[0])
    active: list[tuple] = []
    for rec in ordered:
        minx, maxx, miny, maxy, idx, u, v, seg = rec
        keep = []
        for other in active:
            if other[1] < minx:
                continue
            keep.append(other)
            if other[2] > maxy or other[3] < miny:
                continue
            _classify_pair(rec, other, mapping, violations)
        keep.append(rec)
        active = keep


def _classify_pair(rec_a, rec_b, mapping, violations) -> None:
    idx_a, u_a, v_a, seg_a = rec_a[4], rec_a[5], rec_a[6], rec_a[7]
    idx_b, u_b, v_b, seg_b = rec_b[4], rec_b[5], rec_b[6], rec_b[7]
    pair = (idx_a, idx_b) if idx_a < idx_b else (idx_b, idx_a)
    shares_node = u_a in (u_b, v_b) or v_a in (u_b, v_b)
    rel = classify_segments(seg_a, seg_b)
    kind = rel.kind
    if shares_node:
        # Sharing a node, the images always meet at that node's point; the
        # only possible misbehaviour is extra collinear contact.
        if kind is SegmentRelationKind.COLLINEAR_OVERLAP:
            violations.add(Violation(KIND_EDGES_OVERLAP, edges=pair))
        return
    if kind is SegmentRelationKind.DISJOINT:
        return
    if kind is SegmentRelationKind.PROPER_CROSSING:
        violations.add(Violation(KIND_EDGE_CROSSES_EDGE, edges=pair))
    elif kind is SegmentRelationKind.COLLINEAR_OVERLAP:
        violations.add(Violation(KIND_EDGES_OVERLAP, edges=pair))
    elif kind is SegmentRelationKind.ENDPOINT_ON_INTERIOR:
        # One edge runs through the other's endpoint, which is a mapped
        # point; report it against the pierced edge. The dedicated
        # point-on-edge pass finds the same fact, and the set dedupes it.
        pt = rel.point
        if pt in (seg_a.a, seg_a.b):
            through_edge, point_idx = idx_b, mapping[u_a if pt == seg_a.a else v_a]
        else:
            through_edge, point_idx = idx_a, mapping[u_b if pt == seg_b.a else v_b]
        violations.add(
            Violation(KIND_EDGE_THROUGH_POINT, edges=(through_edge,), points=(point_idx,))
        )
    else:
        # TOUCH_AT_ENDPOINT without a shared node is impossible for a
        # bijective mapping onto distinct points.
        raise AssertionError("endpoint contact between node-disjoint edges")


def _check_points_on_edges(segs, mapping, pts, violations) -> None:
    xs = sorted((p.x, i) for i, p in enumerate(pts))
    xs_keys = [x for x, _ in xs]
    for minx, maxx, miny, maxy, idx, u, v, seg in segs:
        end_a, end_b = mapping[u], mapping[v]
        lo = bisect_left(xs_keys, minx)
        hi = bisect_right(xs_keys, maxx)
        a, b = seg.a, seg.b
        for t in range(lo, hi):
            point_idx = xs[t][1]
            if point_idx == end_a or point_idx == end_b:
                continue
            p = pts[point_idx]
            if p.y < miny or p.y > maxy:
                continue
            if cross(a, b, p) == 0:
                violations.add(
                    Violation(KIND_EDGE_THROUGH_POINT, edges=(idx,), points=(point_idx,))
                )
