"""Core problem types and their canonical, integers-only text format.

Free trees, point sets, embedding instances (tree + points + bounding
polygon), node-to-point embeddings, and verification reports. Serialization
is JSON restricted to integers, booleans, and nested arrays/objects; equal
values always serialize to identical bytes (sorted keys, compact separators,
one trailing newline), which keeps files diffable and round-trips exact.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field

from .errors import ParseError, ValidationError
from .geometry import (
    COORD_LIMIT,
    Point,
    PointLocation,
    SimplePolygon,
    is_simple,
    normalize_ccw,
    point_in_polygon,
)

# ---------------------------------------------------------------------------
# Canonical JSON plumbing

def dumps_canonical(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":")) + "\n"


def _reject_nonint(text: str):
    raise ParseError(f"non-integer literal {text!r} is not allowed")


def loads_strict(text: str):
    """Parse JSON, rejecting floats, NaN, and Infinity outright."""
    try:
        return json.loads(text, parse_float=_reject_nonint, parse_constant=_reject_nonint)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _expect_object(value, path: str, keys: set[str]) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"{path}: expected an object")
    unknown = set(value) - keys
    if unknown:
        raise ParseError(f"{path}: unknown key {sorted(unknown)[0]!r}")
    missing = keys - set(value)
    if missing:
        raise ParseError(f"{path}: missing key {sorted(missing)[0]!r}")
    return value


def _expect_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"{path}: expected an array")
    return value


def _expect_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{path}: expected an integer")
    return value


def _coordinate(value, path: str) -> int:
    v = _expect_int(value, path)
    if abs(v) > COORD_LIMIT:
        raise ParseError(f"{path}: coordinate {v} exceeds the 2^31-1 bound")
    return v


def _index(value, path: str) -> int:
    v = _expect_int(value, path)
    if v < 0:
        raise ParseError(f"{path}: expected a non-negative index")
    return v


def _point(value, path: str) -> Point:
    arr = _expect_list(value, path)
    if len(arr) != 2:
        raise ParseError(f"{path}: expected [x, y]")
    return Point(_coordinate(arr[0], f"{path}[0]"), _coordinate(arr[1], f"{path}[1]"))


# ---------------------------------------------------------------------------
# Domain types

@dataclass(frozen=True)
class FreeTree:
    """An unrooted tree over node indices 0..node_count-1.

    Construction rejects anything that is not a tree: self-loops, duplicate
    edges, cycles, and disconnected edge sets.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((int(u), int(v)) for u, v in self.edges)
        )
        n = self.node_count
        if n < 1:
            raise ValidationError("EmptyTree", "a tree needs at least one node")
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        seen = set()
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(
                    "NodeIndexOutOfRange", f"edge ({u}, {v}) leaves [0, {n})"
                )
            if u == v:
                raise ValidationError("TreeHasCycle", f"self-loop at node {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValidationError("TreeHasCycle", f"duplicate edge {key}")
            seen.add(key)
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValidationError(
                    "TreeHasCycle", f"edge ({u}, {v}) closes a cycle"
                )
            parent[ru] = rv
        if len(self.edges) != n - 1:
            raise ValidationError(
                "TreeNotConnected",
                f"{n} nodes need {n - 1} edges, got {len(self.edges)}",
            )

    @functools.cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        neigh: list[list[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            neigh[u].append(v)
            neigh[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in neigh)

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])


@dataclass(frozen=True)
class PointSet:
    points: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        seen: dict[Point, int] = {}
        for i, p in enumerate(self.points):
            if p in seen:
                raise ValidationError(
                    "DuplicatePoint", f"points {seen[p]} and {i} coincide at {p}"
                )
            seen[p] = i

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]


@dataclass(frozen=True)
class Embedding:
    """A bijection from tree nodes to point indices: mapping[node] = point."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValidationError(
                "NotBijection",
                "mapping is not a permutation of the point indices",
            )

    def __len__(self) -> int:
        return len(self.mapping)


@dataclass(frozen=True)
class EmbeddingInstance:
    """A decision-problem instance: embed `tree` onto `points` inside `polygon`.

    Build these through :func:`make_instance` / :func:`validate_instance`,
    which normalize the polygon and enforce every invariant.
    """

    tree: FreeTree
    points: PointSet
    polygon: SimplePolygon


VIOLATION_KINDS = frozenset(
    {
        "NotBijection",
        "EdgeCrossesEdge",
        "EdgesOverlapAtSegment",
        "EdgeHitsBoundary",
        "EdgeThroughMappedPoint",
    }
)


@dataclass(frozen=True)
class Violation:
    """One specific way an embedding fails.

    ``edges`` are indices into the tree's edge list; ``points`` are indices
    into the instance's point set.
    """

    kind: str
    edges: tuple[int, ...] = ()
    points: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in VIOLATION_KINDS:
            raise ValueError(f"unknown violation kind {self.kind!r}")
        object.__setattr__(self, "edges", tuple(int(e) for e in self.edges))
        object.__setattr__(self, "points", tuple(int(p) for p in self.points))

    def sort_key(self):
        return (self.kind, self.edges, self.points)


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violations: tuple[Violation, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "violations", tuple(self.violations))
        if self.valid != (len(self.violations) == 0):
            raise ValueError("report validity must match emptiness of violations")

    @classmethod
    def from_violations(cls, violations) -> "VerificationReport":
        # Canonical order regardless of how checks were scheduled.
        ordered = tuple(sorted(set(violations), key=Violation.sort_key))
        return cls(valid=not ordered, violations=ordered)


# ---------------------------------------------------------------------------
# Instance validation

def make_instance(
    tree: FreeTree, points: PointSet, polygon: SimplePolygon
) -> EmbeddingInstance:
    """Normalize the polygon to CCW and enforce every instance invariant."""
    if not is_simple(polygon):
        raise ValidationError("PolygonNotSimple", "polygon boundary self-intersects")
    polygon = normalize_ccw(polygon)
    if len(points) != tree.node_count:
        raise ValidationError(
            "NodeCountMismatch",
            f"tree has {tree.node_count} nodes but there are {len(points)} points",
        )
    for i, p in enumerate(points):
        if point_in_polygon(p, polygon) is not PointLocation.INSIDE:
            raise ValidationError(
                "PointOnOrOutsideBoundary",
                f"point {i} at {p} is not strictly inside the polygon",
            )
    return EmbeddingInstance(tree=tree, points=points, polygon=polygon)


def validate_instance(raw) -> EmbeddingInstance:
    """Build a fully validated instance from parsed file data.

    The tree's node count is what the edge list implies (largest index plus
    one; a single node when there are no edges) and must match the number of
    points exactly.
    """
    obj = _expect_object(raw, "instance", {"polygon", "points", "tree_edges"})
    poly_pts = [
        _point(v, f"polygon[{i}]")
        for i, v in enumerate(_expect_list(obj["polygon"], "polygon"))
    ]
    pts = [
        _point(v, f"points[{i}]")
        for i, v in enumerate(_expect_list(obj["points"], "points"))
    ]
    edges = []
    for i, e in enumerate(_expect_list(obj["tree_edges"], "tree_edges")):
        pair = _expect_list(e, f"tree_edges[{i}]")
        if len(pair) != 2:
            raise ParseError(f"tree_edges[{i}]: expected [u, v]")
        edges.append(
            (_index(pair[0], f"tree_edges[{i}][0]"), _index(pair[1], f"tree_edges[{i}][1]"))
        )
    polygon = SimplePolygon(tuple(poly_pts))
    points = PointSet(tuple(pts))
    node_count = max((max(u, v) for u, v in edges), default=0) + 1 if edges else 1
    if node_count != len(points):
        raise ValidationError(
            "NodeCountMismatch",
            f"tree has {node_count} nodes but there are {len(points)} points",
        )
    tree = FreeTree(node_count=len(points), edges=tuple(edges))
    return make_instance(tree, points, polygon)


# ---------------------------------------------------------------------------
# Serialization

def serialize_instance(inst: EmbeddingInstance) -> str:
    return dumps_canonical(
        {
            "polygon": [[p.x, p.y] for p in inst.polygon.vertices],
            "points": [[p.x, p.y] for p in inst.points],
            "tree_edges": [[u, v] for u, v in inst.tree.edges],
        }
    )


def deserialize_instance(text: str) -> EmbeddingInstance:
    return validate_instance(loads_strict(text))


def serialize_embedding(emb: Embedding) -> str:
    return dumps_canonical({"mapping": list(emb.mapping)})


def deserialize_embedding(text: str) -> Embedding:
    obj = _expect_object(loads_strict(text), "embedding", {"mapping"})
    arr = _expect_list(obj["mapping"], "mapping")
    return Embedding(tuple(_index(v, f"mapping[{i}]") for i, v in enumerate(arr)))


def serialize_point_set(points: PointSet) -> str:
    return dumps_canonical({"points": [[p.x, p.y] for p in points]})


def deserialize_point_set(text: str) -> PointSet:
    obj = _expect_object(loads_strict(text), "points", {"points"})
    arr = _expect_list(obj["points"], "points")
    return PointSet(tuple(_point(v, f"points[{i}]") for i, v in enumerate(arr)))


def serialize_tree(tree: FreeTree) -> str:
    return dumps_canonical(
        {"node_count": tree.node_count, "tree_edges": [[u, v] for u, v in tree.edges]}
    )


def deserialize_tree(text: str) -> FreeTree:
    obj = _expect_object(loads_strict(text), "tree", {"node_count", "tree_edges"})
    count = _expect_int(obj["node_count"], "node_count")
    edges = []
    for i, e in enumerate(_expect_list(obj["tree_edges"], "tree_edges")):
        pair = _expect_list(e, f"tree_edges[{i}]")
        if len(pair) != 2:
            raise ParseError(f"tree_edges[{i}]: expected [u, v]")
        edges.append(
            (_index(pair[0], f"tree_edges[{i}][0]"), _index(pair[1], f"tree_edges[{i}][1]"))
        )
    return FreeTree(node_count=count, edges=tuple(edges))


def serialize_report(report: VerificationReport) -> str:
    return dumps_canonical(
        {
            "valid": report.valid,
            "violations": [
                {"kind": v.kind, "edges": list(v.edges), "points": list(v.points)}
                for v in report.violations
            ],
        }
    )


def deserialize_report(text: str) -> VerificationReport:
    obj = _expect_object(loads_strict(text), "report", {"valid", "violations"})
    if not isinstance(obj["valid"], bool):
        raise ParseError("valid: expected a boolean")
    violations = []
    for i, raw in enumerate(_expect_list(obj["violations"], "violations")):
        vobj = _expect_object(raw, f"violations[{i}]", {"kind", "edges", "points"})
        kind = vobj["kind"]
        if not isinstance(kind, str) or kind not in VIOLATION_KINDS:
            raise ParseError(f"violations[{i}].kind: unknown kind {kind!r}")
        violations.append(
            Violation(
                kind=kind,
                edges=tuple(
                    _index(e, f"violations[{i}].edges[{j}]")
                    for j, e in enumerate(_expect_list(vobj["edges"], f"violations[{i}].edges"))
                ),
                points=tuple(
                    _index(p, f"violations[{i}].points[{j}]")
                    for j, p in enumerate(_expect_list(vobj["points"], f"violations[{i}].points"))
                ),
            )
        )
    return VerificationReport(valid=obj["valid"], violations=tuple(violations))


__all__ = [
    "FreeTree",
    "PointSet",
    "Embedding",
    "EmbeddingInstance",
    "Violation",
    "VerificationReport",
    "VIOLATION_KINDS",
    "make_instance",
    "validate_instance",
    "dumps_canonical",
    "loads_strict",
    "serialize_instance",
    "deserialize_instance",
    "serialize_embedding",
    "deserialize_embedding",
    "serialize_point_set",
    "deserialize_point_set",
    "serialize_tree",
    "deserialize_tree",
    "serialize_report",
    "deserialize_report",
]
