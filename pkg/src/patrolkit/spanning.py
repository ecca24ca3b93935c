"""Spanning forests and site partitions: Kruskal MST, edge removal, coarsening."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .metric import MetricSpace
from .unionfind import DisjointSets

# an edge is a (site, site, weight) triple with site indices in ascending order
Edge = tuple[int, int, float]


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty site groups; members and parts in canonical order."""

    parts: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SpanningForest:
    """A cycle-free edge set over some site subset, with its components."""

    edges: tuple[Edge, ...]
    components: tuple[tuple[int, ...], ...]

    def vertices(self) -> list[int]:
        return [v for comp in self.components for v in comp]


def make_partition(parts, n: int) -> Partition:
    """Validate that ``parts`` partitions ``range(n)`` and canonicalize it."""
    cleaned = []
    seen: set[int] = set()
    for part in parts:
        members = sorted(int(v) for v in part)
        if not members:
            raise InvalidInput("empty part in partition")
        for v in members:
            if not 0 <= v < n:
                raise InvalidInput(f"site {v} out of range for {n} sites")
            if v in seen:
                raise InvalidInput(f"site {v} appears in more than one part")
            seen.add(v)
        cleaned.append(tuple(members))
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise InvalidInput(f"partition misses sites {missing}")
    cleaned.sort(key=lambda p: p[0])
    return Partition(parts=tuple(cleaned))


def _check_subset(space: MetricSpace, subset) -> list[int]:
    verts = sorted(int(v) for v in subset)
    if not verts:
        raise InvalidInput("subset must be nonempty")
    for a, b in zip(verts, verts[1:]):
        if a == b:
            raise InvalidInput(f"duplicate site {a} in subset")
    if verts[0] < 0 or verts[-1] >= space.n:
        raise InvalidInput(f"subset sites must lie in [0, {space.n})")
    return verts


def mst(space: MetricSpace, subset) -> SpanningForest:
    """Minimum spanning tree of the sites in ``subset`` by Kruskal's rule.

    Candidate edges are scanned in (weight, i, j) order so ties resolve the
    same way on every run.
    """
    verts = _check_subset(space, subset)
    pos = {v: idx for idx, v in enumerate(verts)}
    candidates = sorted(
        (space.dist[a][b], a, b) for ai, a in enumerate(verts) for b in verts[ai + 1 :]
    )
    sets = DisjointSets(len(verts))
    edges: list[Edge] = []
    for w, a, b in candidates:
        if sets.union(pos[a], pos[b]):
            edges.append((a, b, w))
            if len(edges) == len(verts) - 1:
                break
    components = tuple(tuple(verts[i] for i in grp) for grp in sets.groups())
    return SpanningForest(edges=tuple(edges), components=components)


def remove_heaviest(forest: SpanningForest, count: int) -> tuple[tuple[Edge, ...], SpanningForest]:
    """Split off the ``count`` heaviest forest edges (all of them if fewer).

    Returns (removed edges, remaining forest). Weight ties break on the
    lexicographically smallest endpoint pair first.
    """
    if count < 0:
        raise InvalidInput("count must be nonnegative")
    order = sorted(forest.edges, key=lambda e: (-e[2], e[0], e[1]))
    take = min(count, len(order))
    removed = tuple(order[:take])
    removed_set = set(removed)
    kept = tuple(e for e in forest.edges if e not in removed_set)
    verts = forest.vertices()
    pos = {v: idx for idx, v in enumerate(verts)}
    sets = DisjointSets(len(verts))
    for a, b, _ in kept:
        sets.union(pos[a], pos[b])
    components = tuple(tuple(verts[i] for i in grp) for grp in sets.groups())
    return removed, SpanningForest(edges=kept, components=components)


def coarsen(base: Partition, space: MetricSpace, edge_subset) -> Partition:
    """Merge the parts of ``base`` that ``edge_subset`` connects.

    Edges may be (i, j) pairs or (i, j, weight) triples; endpoints must be
    valid sites of ``space``.
    """
    n = space.n
    base = make_partition(base.parts, n)
    sets = DisjointSets(n)
    for part in base.parts:
        for v in part[1:]:
            sets.union(part[0], v)
    for edge in edge_subset:
        a, b = int(edge[0]), int(edge[1])
        if not (0 <= a < n and 0 <= b < n):
            raise InvalidInput(f"edge ({a}, {b}) out of range for {n} sites")
        sets.union(a, b)
    return make_partition(sets.groups(), n)


def count_long_edges(forest: SpanningForest, threshold: float) -> int:
    """Number of forest edges strictly heavier than ``threshold``."""
    return sum(1 for _, _, w in forest.edges if w > threshold)
