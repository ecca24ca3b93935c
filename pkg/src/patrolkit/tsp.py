"""Closed-tour construction: exact Held-Karp, MST doubling, and 2-opt refinement."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import spanning
from .errors import InvalidInput, LimitExceeded
from .metric import MetricSpace

EXACT_LIMIT = 13

# strictly-better threshold for accepting a 2-opt exchange
_2OPT_EPS = 1e-12


@dataclass(frozen=True)
class Tour:
    """A closed tour: visiting order plus its cyclic length.

    Singleton and empty supports are legal and have length 0.
    """

    order: tuple[int, ...]
    length: float


def tour_length(space: MetricSpace, order) -> float:
    seq = list(order)
    if len(seq) < 2:
        return 0.0
    total = 0.0
    for a, b in zip(seq, seq[1:]):
        total += space.dist[a][b]
    total += space.dist[seq[-1]][seq[0]]
    return total


def make_tour(space: MetricSpace, order) -> Tour:
    seq = tuple(int(v) for v in order)
    if len(set(seq)) != len(seq):
        raise InvalidInput("tour visits a site twice")
    for v in seq:
        if not 0 <= v < space.n:
            raise InvalidInput(f"site {v} out of range")
    return Tour(order=seq, length=tour_length(space, seq))


def tour_exact(space: MetricSpace, subset, exact_limit: int = EXACT_LIMIT) -> Tour:
    """Optimal closed tour over ``subset`` by Held-Karp dynamic programming.

    Refuses supports larger than ``exact_limit``. Ties resolve toward the
    first optimal predecessor in index order, so the result is stable.
    """
    verts = spanning._check_subset(space, subset)
    m = len(verts)
    if m > exact_limit:
        raise LimitExceeded(
            f"exact tour over {m} sites exceeds the limit of {exact_limit}; "
            "switch to the tree-double or 2opt algorithm for parts this large"
        )
    if m <= 3:
        return make_tour(space, verts)
    d = [[space.dist[a][b] for b in verts] for a in verts]
    # dp[mask][j]: cheapest path from vertex 0 through mask ending at j+1
    size = 1 << (m - 1)
    dp = [[math.inf] * (m - 1) for _ in range(size)]
    parent = [[-1] * (m - 1) for _ in range(size)]
    for j in range(m - 1):
        dp[1 << j][j] = d[0][j + 1]
    for mask in range(1, size):
        row = dp[mask]
        for j in range(m - 1):
            cur = row[j]
            if cur == math.inf or not (mask >> j) & 1:
                continue
            dj = d[j + 1]
            for t in range(m - 1):
                if (mask >> t) & 1:
                    continue
                nxt = mask | (1 << t)
                cand = cur + dj[t + 1]
                if cand < dp[nxt][t]:
                    dp[nxt][t] = cand
                    parent[nxt][t] = j
    full = size - 1
    best_j = min(range(m - 1), key=lambda j: (dp[full][j] + d[j + 1][0], j))
    rel = []
    mask, j = full, best_j
    while j != -1:
        rel.append(j)
        mask, j = mask ^ (1 << j), parent[mask][j]
    order = (verts[0],) + tuple(verts[t + 1] for t in reversed(rel))
    return make_tour(space, order)


def tour_tree_double(space: MetricSpace, subset) -> Tour:
    """2-approximate tour: preorder walk of the subset's minimum spanning tree.

    Doubling the MST gives a closed walk of twice its weight; shortcutting
    repeats by the preorder order can only shorten it under the triangle
    inequality. The walk starts at the smallest site and breaks ties toward
    smaller neighbors.
    """
    forest = spanning.mst(space, subset)
    verts = [v for comp in forest.components for v in comp]
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for a, b, _ in forest.edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        adj[v].sort()
    root = min(verts)
    order: list[int] = []
    seen: set[int] = set()
    stack = [root]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        order.append(v)
        for u in reversed(adj[v]):
            if u not in seen:
                stack.append(u)
    return make_tour(space, order)


def refine_2opt(space: MetricSpace, tour: Tour) -> Tour:
    """Improve a tour by first-improvement 2-opt exchanges until none helps.

    Exchanges are scanned in index order; total applied moves are capped at
    10 * len(order)^2 as a safety valve against float cycling.
    """
    order = list(tour.order)
    m = len(order)
    if m <= 3:
        return make_tour(space, order)
    d = space.dist
    cap = 10 * m * m
    moves = 0
    improved = True
    while improved and moves < cap:
        improved = False
        for i in range(1, m - 1):
            for j in range(i + 1, m):
                a, b = order[i - 1], order[i]
                c, e = order[j], order[(j + 1) % m]
                delta = d[a][c] + d[b][e] - d[a][b] - d[c][e]
                if delta < -_2OPT_EPS:
                    order[i : j + 1] = reversed(order[i : j + 1])
                    moves += 1
                    improved = True
                    if moves >= cap:
                        break
            if moves >= cap:
                break
    return make_tour(space, order)


@dataclass(frozen=True)
class TspAlgorithm:
    """A tour builder together with its worst-case approximation factor."""

    kind: str
    gamma: float
    exact_limit: int = EXACT_LIMIT

    NAMES = ("exact", "tree-double", "2opt")

    @classmethod
    def from_name(cls, kind: str, exact_limit: int = EXACT_LIMIT) -> "TspAlgorithm":
        if kind == "exact":
            return cls(kind=kind, gamma=1.0, exact_limit=exact_limit)
        if kind in ("tree-double", "2opt"):
            return cls(kind=kind, gamma=2.0, exact_limit=exact_limit)
        raise InvalidInput(f"unknown tsp algorithm {kind!r}; choose from {cls.NAMES}")

    def tour(self, space: MetricSpace, subset) -> Tour:
        if self.kind == "exact":
            return tour_exact(space, subset, self.exact_limit)
        base = tour_tree_double(space, subset)
        if self.kind == "2opt":
            return refine_2opt(space, base)
        return base
