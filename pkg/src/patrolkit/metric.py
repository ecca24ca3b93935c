"""Finite metric spaces: construction, validation, and unit-graph subdivision."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInput, MetricViolation

# relative slack when checking the triangle inequality
TRIANGLE_RTOL = 1e-9


@dataclass(frozen=True)
class MetricSpace:
    """A finite metric over ``n`` sites stored as a full distance matrix.

    ``points`` is kept when the space came from Euclidean coordinates so the
    instance can be drawn later; matrix-built spaces leave it as None.
    """

    n: int
    dist: tuple[tuple[float, ...], ...]
    labels: tuple[str, ...] | None = None
    points: tuple[tuple[float, ...], ...] | None = None

    def label_of(self, site: int) -> str:
        if self.labels is not None:
            return self.labels[site]
        return str(site)


@dataclass(frozen=True)
class UnitGraph:
    """An unweighted graph whose shortest paths realize an integer metric.

    Nodes ``0 .. original_count-1`` are the original sites; the rest are
    dummy nodes subdividing each pairwise edge into unit steps.
    """

    original_count: int
    total_count: int
    edges: tuple[tuple[int, int], ...]
    neighbors: tuple[tuple[int, ...], ...]


def _check_labels(labels, n: int) -> tuple[str, ...] | None:
    if labels is None:
        return None
    out = tuple(str(x) for x in labels)
    if len(out) != n:
        raise InvalidInput(f"expected {n} labels, got {len(out)}")
    return out


def _validate_matrix(dist: tuple[tuple[float, ...], ...]) -> None:
    n = len(dist)
    for i in range(n):
        if len(dist[i]) != n:
            raise InvalidInput(f"row {i} has length {len(dist[i])}, expected {n}")
        for j in range(n):
            if not math.isfinite(dist[i][j]):
                raise MetricViolation(f"non-finite distance at ({i}, {j})")
    for i in range(n):
        if dist[i][i] != 0:
            raise MetricViolation(f"nonzero diagonal entry at site {i}: {dist[i][i]!r}")
        for j in range(n):
            if i == j:
                continue
            if dist[i][j] != dist[j][i]:
                raise MetricViolation(
                    f"asymmetric entries at ({i}, {j}): {dist[i][j]!r} != {dist[j][i]!r}"
                )
            if dist[i][j] <= 0:
                raise MetricViolation(f"non-positive distance at ({i}, {j}): {dist[i][j]!r}")
    for m in range(n):
        row_m = dist[m]
        for i in range(n):
            d_im = dist[i][m]
            for j in range(n):
                if dist[i][j] > (d_im + row_m[j]) * (1.0 + TRIANGLE_RTOL):
                    raise MetricViolation(
                        f"triangle inequality fails at ({i}, {m}, {j}): "
                        f"{dist[i][j]!r} > {d_im!r} + {row_m[j]!r}",
                        triple=(i, m, j),
                    )


def from_matrix(matrix, labels=None) -> MetricSpace:
    """Build a metric space from a symmetric distance matrix.

    Raises MetricViolation (naming the offending entries) when the matrix is
    asymmetric, has a nonzero diagonal, a non-positive off-diagonal entry, or
    breaks the triangle inequality beyond a 1e-9 relative slack.
    """
    rows = tuple(tuple(float(x) for x in row) for row in matrix)
    if not rows:
        raise InvalidInput("matrix must have at least one site")
    _validate_matrix(rows)
    return MetricSpace(n=len(rows), dist=rows, labels=_check_labels(labels, len(rows)))


def from_points(points, labels=None) -> MetricSpace:
    """Build a Euclidean metric space from coordinate tuples.

    All points must share a dimension, have finite coordinates, and be
    pairwise distinct.
    """
    pts = tuple(tuple(float(c) for c in p) for p in points)
    if not pts:
        raise InvalidInput("at least one point required")
    dim = len(pts[0])
    if dim == 0:
        raise InvalidInput("points must have at least one coordinate")
    for idx, p in enumerate(pts):
        if len(p) != dim:
            raise InvalidInput(f"point {idx} has dimension {len(p)}, expected {dim}")
        for c in p:
            if not math.isfinite(c):
                raise InvalidInput(f"non-finite coordinate in point {idx}")
    n = len(pts)
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = math.dist(pts[i], pts[j])
            if d == 0.0:
                raise InvalidInput(f"duplicate points at indices {i} and {j}")
            dist[i][j] = dist[j][i] = d
    rows = tuple(tuple(row) for row in dist)
    _validate_matrix(rows)
    return MetricSpace(n=n, dist=rows, labels=_check_labels(labels, n), points=pts)


def subdivide_integer(space: MetricSpace) -> UnitGraph:
    """Replace every pairwise distance D by a path of D unit edges.

    Each pair (i, j) with distance D > 1 gets D - 1 dedicated dummy nodes, so
    graph distance between original sites equals the metric exactly. Requires
    every off-diagonal distance to be a positive integer.
    """
    n = space.n
    edges: list[tuple[int, int]] = []
    nxt = n
    for i in range(n):
        for j in range(i + 1, n):
            d = space.dist[i][j]
            if not float(d).is_integer() or d < 1:
                raise InvalidInput(
                    f"distance between sites {i} and {j} is {d!r}, not a positive integer"
                )
            steps = int(d)
            prev = i
            for _ in range(steps - 1):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
            edges.append((prev, j))
    adj: list[list[int]] = [[] for _ in range(nxt)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    neighbors = tuple(tuple(sorted(a)) for a in adj)
    return UnitGraph(
        original_count=n,
        total_count=nxt,
        edges=tuple(edges),
        neighbors=neighbors,
    )
