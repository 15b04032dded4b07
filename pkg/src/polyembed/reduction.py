"""From 3-partition to tree embedding and back.

Validates 3-partition inputs, builds the matching embedding instance (a hub
tree whose chains must tile groups of collinear points that notched triangles
carve apart), recovers a 3-partition solution from a valid embedding, and
provides a small exhaustive 3-partition oracle for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .geometry import COORD_LIMIT, Point, SimplePolygon
from .model import (
    Embedding,
    EmbeddingInstance,
    FreeTree,
    PointSet,
    _expect_int,
    _expect_list,
    _expect_object,
    _index,
    dumps_canonical,
    loads_strict,
    make_instance,
)


@dataclass(frozen=True)
class ThreePartitionInstance:
    """3n values that must split into n triples, each summing to ``target``.

    Every value is strictly between target/4 and target/2, so only triples
    can reach the target sum.
    """

    target: int
    values: tuple[int, ...]

    @property
    def group_count(self) -> int:
        return len(self.values) // 3


def validate_3p(target: int, values) -> ThreePartitionInstance:
    """Check the three defining constraints, naming the first one violated."""
    vals = tuple(int(v) for v in values)
    if len(vals) == 0 or len(vals) % 3 != 0:
        raise ValidationError(
            "LengthNotMultipleOf3",
            f"need a positive multiple of 3 values, got {len(vals)}",
        )
    for i, a in enumerate(vals):
        if not (4 * a > target and 2 * a < target):
            raise ValidationError(
                "ElementOutOfRange",
                f"a[{i}]={a} is not strictly between {target}/4 and {target}/2",
                index=i,
            )
    n = len(vals) // 3
    if sum(vals) != target * n:
        raise ValidationError(
            "SumMismatch", f"values sum to {sum(vals)}, expected {target}*{n}"
        )
    return ThreePartitionInstance(target=target, values=vals)


@dataclass(frozen=True)
class Partition:
    """n disjoint index triples covering 0..3n-1, in canonical order."""

    sets: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "sets", tuple(tuple(int(i) for i in s) for s in self.sets)
        )
        flat = []
        for s in self.sets:
            if len(s) != 3 or not (s[0] < s[1] < s[2]):
                raise ValidationError(
                    "InvalidPartition", f"set {s} is not a sorted triple"
                )
            flat.extend(s)
        if sorted(flat) != list(range(3 * len(self.sets))):
            raise ValidationError(
                "InvalidPartition", "sets do not partition the index range"
            )
        if list(self.sets) != sorted(self.sets):
            raise ValidationError(
                "InvalidPartition", "sets are not in lexicographic order"
            )

    @classmethod
    def from_sets(cls, sets) -> "Partition":
        canonical = sorted(tuple(sorted(s)) for s in sets)
        return cls(sets=tuple(canonical))


def partition_solves(inst: ThreePartitionInstance, partition: Partition) -> bool:
    """True iff every triple of the partition sums to the instance target."""
    if len(partition.sets) != inst.group_count:
        return False
    return all(
        sum(inst.values[i] for i in triple) == inst.target
        for triple in partition.sets
    )


@dataclass(frozen=True)
class ReductionMeta:
    """Index bookkeeping tying a generated instance back to its source.

    Field names mirror the meta file schema: ``v0_node`` is the tree hub,
    ``p0_point`` the lone high point every other point can see,
    ``path_nodes[i]`` the i-th chain in hub-to-tail order, and
    ``group_points[g]`` the g-th block of collinear points, left to right.
    """

    B: int
    n: int
    v0_node: int
    path_nodes: tuple[tuple[int, ...], ...]
    group_points: tuple[tuple[int, ...], ...]
    p0_point: int

    def __post_init__(self):
        object.__setattr__(
            self, "path_nodes", tuple(tuple(int(v) for v in p) for p in self.path_nodes)
        )
        object.__setattr__(
            self,
            "group_points",
            tuple(tuple(int(v) for v in g) for g in self.group_points),
        )
        if self.B < 1 or self.n < 1:
            raise ValidationError("InvalidMeta", "B and n must be positive")
        total = self.n * self.B + 1
        if len(self.path_nodes) != 3 * self.n:
            raise ValidationError(
                "InvalidMeta", f"expected {3 * self.n} paths, got {len(self.path_nodes)}"
            )
        covered = [self.v0_node]
        for path in self.path_nodes:
            if not path:
                raise ValidationError("InvalidMeta", "empty path")
            covered.extend(path)
        if sorted(covered) != list(range(total)):
            raise ValidationError(
                "InvalidMeta", "hub and paths do not partition the node range"
            )
        if len(self.group_points) != self.n or any(
            len(g) != self.B for g in self.group_points
        ):
            raise ValidationError(
                "InvalidMeta", f"expected {self.n} groups of exactly {self.B} points"
            )
        covered_pts = [self.p0_point]
        for group in self.group_points:
            covered_pts.extend(group)
        if sorted(covered_pts) != list(range(total)):
            raise ValidationError(
                "InvalidMeta", "p0 and groups do not partition the point range"
            )

    @property
    def node_count(self) -> int:
        return self.n * self.B + 1


# ---------------------------------------------------------------------------
# Generators

def build_tree(inst: ThreePartitionInstance) -> tuple[FreeTree, tuple[tuple[int, ...], ...]]:
    """Hub node 0 plus one chain per input value, chain heads wired to the hub.

    Returns the tree and, per value, the chain's node indices in head-to-tail
    order. Node count is always n*B + 1.
    """
    edges: list[tuple[int, int]] = []
    paths: list[tuple[int, ...]] = []
    next_node = 1
    for a in inst.values:
        nodes = tuple(range(next_node, next_node + a))
        next_node += a
        edges.append((0, nodes[0]))
        edges.extend((nodes[t], nodes[t + 1]) for t in range(a - 1))
        paths.append(nodes)
    return FreeTree(node_count=next_node, edges=tuple(edges)), tuple(paths)


def build_polygon(n: int, B: int) -> SimplePolygon:
    """The bounding region: a right triangle with n-1 notches cut from its base.

    Counter-clockwise cycle: origin; for each notch k the triple
    (B+1+k(B+2), 0), (B+1+k(B+2), 2), (B+3+k(B+2), 0); then the far base
    corner (n(B+2), 0) and the apex (0, n(B+2)). Exactly 3n vertices.
    """
    if n < 1 or B < 1:
        raise ValidationError("InvalidParameter", "n and B must be positive")
    if n * (B + 2) > COORD_LIMIT:
        raise ValidationError(
            "CoordinateOutOfRange", f"n*(B+2)={n * (B + 2)} exceeds the coordinate bound"
        )
    verts: list[Point] = [Point(0, 0)]
    for k in range(n - 1):
        off = k * (B + 2)
        verts.append(Point(B + 1 + off, 0))
        verts.append(Point(B + 1 + off, 2))
        verts.append(Point(B + 3 + off, 0))
    verts.append(Point(n * (B + 2), 0))
    verts.append(Point(0, n * (B + 2)))
    return SimplePolygon(tuple(verts))


def build_points(n: int, B: int) -> tuple[PointSet, tuple[tuple[int, ...], ...]]:
    """One high anchor point plus n groups of B collinear points at height 1.

    The anchor (1, n(B+2)-2) comes first; group i then covers
    x = (i-1)(B+2)+1 .. (i-1)(B+2)+B. Requires B >= 3 so the anchor sits
    strictly below the hypotenuse and strictly above the notch peaks.
    """
    if n < 1:
        raise ValidationError("InvalidParameter", "n must be positive")
    if B < 3:
        raise ValidationError(
            "InvalidParameter", "B must be at least 3 for a strictly interior anchor"
        )
    if n * (B + 2) > COORD_LIMIT:
        raise ValidationError(
            "CoordinateOutOfRange", f"n*(B+2)={n * (B + 2)} exceeds the coordinate bound"
        )
    pts: list[Point] = [Point(1, n * (B + 2) - 2)]
    groups: list[tuple[int, ...]] = []
    for i in range(1, n + 1):
        base = (i - 1) * (B + 2)
        start = len(pts)
        pts.extend(Point(base + j, 1) for j in range(1, B + 1))
        groups.append(tuple(range(start, start + B)))
    return PointSet(tuple(pts)), tuple(groups)


def build_instance(inst: ThreePartitionInstance) -> tuple[EmbeddingInstance, ReductionMeta]:
    """Assemble and validate the full embedding instance for a 3-partition input."""
    n, B = inst.group_count, inst.target
    tree, paths = build_tree(inst)
    points, groups = build_points(n, B)
    polygon = build_polygon(n, B)
    instance = make_instance(tree, points, polygon)
    meta = ReductionMeta(
        B=B,
        n=n,
        v0_node=0,
        path_nodes=paths,
        group_points=groups,
        p0_point=0,
    )
    return instance, meta


# ---------------------------------------------------------------------------
# Back-extraction and oracle

def extract_partition(meta: ReductionMeta, embedding: Embedding) -> Partition:
    """Read a 3-partition solution off a verifier-valid embedding.

    Each chain must land entirely inside one group; a chain straddling groups
    would contradict the construction's correctness argument, so it raises
    loudly instead of returning a best-effort answer.
    """
    if len(embedding) != meta.node_count:
        raise ValidationError(
            "SizeMismatch",
            f"embedding maps {len(embedding)} nodes, meta describes {meta.node_count}",
        )
    if embedding.mapping[meta.v0_node] != meta.p0_point:
        raise ValidationError(
            "HubNotOnP0",
            f"hub node {meta.v0_node} maps to point {embedding.mapping[meta.v0_node]}, "
            f"not the anchor point {meta.p0_point}",
        )
    group_of_point: dict[int, int] = {}
    for g, group in enumerate(meta.group_points):
        for pt in group:
            group_of_point[pt] = g
    sets_by_group: list[list[int]] = [[] for _ in range(meta.n)]
    for path_index, nodes in enumerate(meta.path_nodes):
        groups_hit = {group_of_point[embedding.mapping[v]] for v in nodes}
        if len(groups_hit) != 1:
            raise ValidationError(
                "PathStraddlesGroups",
                f"path {path_index} maps into groups {sorted(groups_hit)}; "
                "a verifier-valid embedding must keep each path in one group",
                path=path_index,
            )
        sets_by_group[groups_hit.pop()].append(path_index)
    return Partition.from_sets(sets_by_group)


def brute_force_3p(inst: ThreePartitionInstance) -> Partition | None:
    """Exhaustive search over unordered index triples.

    Deterministic: triples are tried with ascending leaders and ascending
    (j, k) pairs, so the first hit is the lexicographically least partition.
    Refuses instances with more than 15 values.
    """
    m = len(inst.values)
    if m > 15:
        raise ValidationError(
            "InstanceTooLarge", f"exhaustive search is capped at 15 values, got {m}"
        )
    target = inst.target
    values = inst.values

    def search(remaining: list[int], acc: list[tuple[int, int, int]]):
        if not remaining:
            return list(acc)
        lead = remaining[0]
        rest = remaining[1:]
        for jj in range(len(rest)):
            vj = values[rest[jj]]
            for kk in range(jj + 1, len(rest)):
                if values[lead] + vj + values[rest[kk]] == target:
                    acc.append((lead, rest[jj], rest[kk]))
                    nxt = [x for t, x in enumerate(rest) if t != jj and t != kk]
                    found = search(nxt, acc)
                    if found is not None:
                        return found
                    acc.pop()
        return None

    triples = search(list(range(m)), [])
    if triples is None:
        return None
    partition = Partition.from_sets(triples)
    assert partition_solves(inst, partition)
    return partition


# ---------------------------------------------------------------------------
# Serialization

def serialize_meta(meta: ReductionMeta) -> str:
    return dumps_canonical(
        {
            "B": meta.B,
            "n": meta.n,
            "v0_node": meta.v0_node,
            "path_nodes": [list(p) for p in meta.path_nodes],
            "group_points": [list(g) for g in meta.group_points],
            "p0_point": meta.p0_point,
        }
    )


def deserialize_meta(text: str) -> ReductionMeta:
    obj = _expect_object(
        loads_strict(text),
        "meta",
        {"B", "n", "v0_node", "path_nodes", "group_points", "p0_point"},
    )
    paths = [
        tuple(_index(v, f"path_nodes[{i}][{j}]") for j, v in enumerate(_expect_list(p, f"path_nodes[{i}]")))
        for i, p in enumerate(_expect_list(obj["path_nodes"], "path_nodes"))
    ]
    groups = [
        tuple(_index(v, f"group_points[{i}][{j}]") for j, v in enumerate(_expect_list(g, f"group_points[{i}]")))
        for i, g in enumerate(_expect_list(obj["group_points"], "group_points"))
    ]
    return ReductionMeta(
        B=_expect_int(obj["B"], "B"),
        n=_expect_int(obj["n"], "n"),
        v0_node=_index(obj["v0_node"], "v0_node"),
        path_nodes=tuple(paths),
        group_points=tuple(groups),
        p0_point=_index(obj["p0_point"], "p0_point"),
    )


def serialize_partition(partition: Partition) -> str:
    return dumps_canonical({"sets": [list(s) for s in partition.sets]})


def deserialize_partition(text: str) -> Partition:
    obj = _expect_object(loads_strict(text), "partition", {"sets"})
    sets = [
        tuple(_index(v, f"sets[{i}][{j}]") for j, v in enumerate(_expect_list(s, f"sets[{i}]")))
        for i, s in enumerate(_expect_list(obj["sets"], "sets"))
    ]
    return Partition(sets=tuple(sets))
