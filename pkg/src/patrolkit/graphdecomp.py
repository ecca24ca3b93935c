"""Multigraph subroutines: Eulerization, line graphs, and 2-path decompositions.

A 2-path is a pair of distinct edges sharing an endpoint. Connected loop-free
multigraphs with an even number of edges always split into 2-paths; with an
odd number of edges one edge is left over, and the leftover can be forced to
touch any chosen anchor vertex. When an odd graph contains an even cycle, the
leftover can instead be absorbed into a claw (three edges sharing exactly one
vertex) carved out of that cycle, leaving an even remainder.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput, LimitExceeded, NotConnected, PreconditionViolated
from .unionfind import DisjointSets

EULERIZE_MAX_ODD = 16


@dataclass(frozen=True)
class MultiGraph:
    """An undirected multigraph; edges are endpoint pairs indexed by position."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidInput("graph needs at least one vertex")
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidInput(f"edge {eid} has endpoints ({u}, {v}) out of range")

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per vertex, (neighbor, edge id) pairs sorted for stable scans."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for eid, (u, v) in enumerate(self.edges):
            adj[u].append((v, eid))
            if u != v:
                adj[v].append((u, eid))
        for lst in adj:
            lst.sort()
        return adj

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        adj = self.adjacency()
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.vertex_count

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)


@dataclass(frozen=True)
class Decomposition:
    """Edge ids grouped into 2-paths plus at most one claw or leftover edge."""

    two_paths: tuple[tuple[int, int], ...]
    claw: tuple[int, int, int] | None = None
    leftover_edge: int | None = None

    def __post_init__(self):
        if self.claw is not None and self.leftover_edge is not None:
            raise InvalidInput("a decomposition has either a claw or a leftover, not both")

    def covered_ids(self) -> list[int]:
        ids: list[int] = []
        for a, b in self.two_paths:
            ids.extend((a, b))
        if self.claw is not None:
            ids.extend(self.claw)
        if self.leftover_edge is not None:
            ids.append(self.leftover_edge)
        return sorted(ids)


def make_graph(vertex_count: int, edges) -> MultiGraph:
    return MultiGraph(vertex_count=int(vertex_count), edges=tuple((int(u), int(v)) for u, v in edges))


# ---------------------------------------------------------------------------
# Eulerization
# ---------------------------------------------------------------------------


def _bfs_tree(g: MultiGraph, root: int):
    adj = g.adjacency()
    parent_vertex = {root: None}
    parent_eid: dict[int, int | None] = {root: None}
    depth = {root: 0}
    order = [root]
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for y, eid in adj[x]:
            if y not in depth:
                depth[y] = depth[x] + 1
                parent_vertex[y] = x
                parent_eid[y] = eid
                order.append(y)
    return parent_vertex, parent_eid, depth


def _tree_path_edges(u: int, v: int, parent_vertex, parent_eid, depth) -> list[int]:
    path: list[int] = []
    a, b = u, v
    tail: list[int] = []
    while depth[a] > depth[b]:
        path.append(parent_eid[a])
        a = parent_vertex[a]
    while depth[b] > depth[a]:
        tail.append(parent_eid[b])
        b = parent_vertex[b]
    while a != b:
        path.append(parent_eid[a])
        tail.append(parent_eid[b])
        a, b = parent_vertex[a], parent_vertex[b]
    return path + tail[::-1]


def _min_pairing(count: int, cost) -> list[tuple[int, int]]:
    """Minimum-cost perfect matching on an even index set by subset DP.

    Ties resolve toward the smallest available partner, so the pairing is
    deterministic.
    """
    full = (1 << count) - 1
    memo: dict[int, tuple[int, tuple[tuple[int, int], ...]]] = {0: (0, ())}

    def rec(mask: int) -> tuple[int, tuple[tuple[int, int], ...]]:
        got = memo.get(mask)
        if got is not None:
            return got
        i = (mask & -mask).bit_length() - 1
        best: tuple[int, tuple[tuple[int, int], ...]] | None = None
        rest_i = mask ^ (1 << i)
        for j in range(i + 1, count):
            if not (mask >> j) & 1:
                continue
            sub_cost, sub_pairs = rec(rest_i ^ (1 << j))
            cand = (cost[i][j] + sub_cost, ((i, j),) + sub_pairs)
            if best is None or cand[0] < best[0]:
                best = cand
        assert best is not None
        memo[mask] = best
        return best

    return list(rec(full)[1])


def eulerize(g: MultiGraph) -> tuple[tuple[int, ...], MultiGraph]:
    """Duplicate existing edges until every vertex has even degree.

    Odd-degree vertices are paired up to minimize the total hop length of the
    connecting paths inside a spanning tree; a minimum pairing uses each tree
    edge at most once, so at most |E| edges are duplicated (|E| - 1 when the
    graph has exactly one degree-1 vertex, |E| - 2 when it has none).
    Returns the duplicated edge ids and the Eulerized graph.
    """
    if not g.edges:
        raise InvalidInput("graph needs at least one edge")
    if not g.is_connected():
        raise NotConnected("eulerize requires a connected graph")
    deg = g.degrees()
    odd = [v for v in range(g.vertex_count) if deg[v] % 2 == 1]
    if not odd:
        return (), g
    if len(odd) > EULERIZE_MAX_ODD:
        raise LimitExceeded(f"more than {EULERIZE_MAX_ODD} odd vertices")
    parent_vertex, parent_eid, depth = _bfs_tree(g, 0)
    paths = [
        [_tree_path_edges(a, b, parent_vertex, parent_eid, depth) for b in odd] for a in odd
    ]
    cost = [[len(p) for p in row] for row in paths]
    pairs = _min_pairing(len(odd), cost)
    used: set[int] = set()
    for i, j in pairs:
        for eid in paths[i][j]:
            if eid in used:
                raise AssertionError("minimum pairing reused a tree edge")
            used.add(eid)
    duplicated = tuple(sorted(used))
    enlarged = MultiGraph(
        vertex_count=g.vertex_count,
        edges=g.edges + tuple(g.edges[eid] for eid in duplicated),
    )
    return duplicated, enlarged


# ---------------------------------------------------------------------------
# Line graph
# ---------------------------------------------------------------------------


def line_graph(g: MultiGraph) -> MultiGraph:
    """The graph on edge ids where two ids are adjacent iff they share an
    endpoint. Parallel edges are adjacent; a loop meets everything at its
    vertex but contributes no self-adjacency."""
    if not g.edges:
        raise InvalidInput("line graph needs at least one edge")
    out: list[tuple[int, int]] = []
    ends = [set(e) for e in g.edges]
    for i in range(len(g.edges)):
        for j in range(i + 1, len(g.edges)):
            if ends[i] & ends[j]:
                out.append((i, j))
    return MultiGraph(vertex_count=len(g.edges), edges=tuple(out))


# ---------------------------------------------------------------------------
# 2-path peeling
# ---------------------------------------------------------------------------


def _peel_step(active: dict[int, tuple[int, int]], anchor: int) -> tuple[int, int]:
    """Pick one 2-path to remove, keeping the remainder connected and the
    anchor inside it while other edges remain.

    Strategy on a BFS tree rooted at the anchor: a vertex carrying two
    non-tree edges gives an immediate 2-path; otherwise the deepest leaf's
    tree edge pairs with a second edge at the leaf, at its parent, or with
    the parent's own tree edge or a sibling edge.
    """
    support = sorted({x for e in active.values() for x in e} | {anchor})
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in support}
    for eid in sorted(active):
        u, v = active[eid]
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    for v in adj:
        adj[v].sort()

    parent_vertex: dict[int, int] = {}
    parent_eid: dict[int, int] = {}
    depth = {anchor: 0}
    order = [anchor]
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for y, eid in adj[x]:
            if y not in depth:
                depth[y] = depth[x] + 1
                parent_vertex[y] = x
                parent_eid[y] = eid
                order.append(y)
    if len(depth) != len(support):
        raise AssertionError("active edges lost connectivity to the anchor")

    tree_eids = set(parent_eid.values())
    nontree_at: dict[int, list[int]] = {v: [] for v in support}
    for eid in sorted(active):
        if eid in tree_eids:
            continue
        u, v = active[eid]
        nontree_at[u].append(eid)
        if v != u:
            nontree_at[v].append(eid)

    for v in support:
        if len(nontree_at[v]) >= 2:
            return nontree_at[v][0], nontree_at[v][1]

    children: dict[int, list[int]] = {v: [] for v in support}
    for y, x in parent_vertex.items():
        children[x].append(y)
    leaves = [v for v in support if v != anchor and not children[v]]
    deepest = max(depth[v] for v in leaves)
    u = min(v for v in leaves if depth[v] == deepest)
    e1 = parent_eid[u]
    if nontree_at[u]:
        return e1, nontree_at[u][0]
    w = parent_vertex[u]
    if nontree_at[w]:
        return e1, nontree_at[w][0]
    kids = children[w]
    if len(kids) == 1:
        if w == anchor:
            raise AssertionError("anchor with a single pendant edge cannot be peeled")
        return e1, parent_eid[w]
    sibling = min(x for x in kids if x != u)
    return e1, parent_eid[sibling]


def _peel(edges: dict[int, tuple[int, int]], anchor: int):
    """Remove 2-paths until at most one edge remains. Returns the pairs and
    the leftover edge id (None when the edge count was even)."""
    active = dict(edges)
    two_paths: list[tuple[int, int]] = []
    while len(active) > 1:
        e1, e2 = _peel_step(active, anchor)
        if not set(active[e1]) & set(active[e2]):
            raise AssertionError("peeled edges do not share a vertex")
        two_paths.append((e1, e2) if e1 < e2 else (e2, e1))
        del active[e1]
        del active[e2]
    leftover = next(iter(active)) if active else None
    return tuple(two_paths), leftover


def _reject_loops(g: MultiGraph) -> None:
    if g.has_loops():
        raise InvalidInput("decomposition requires a loop-free graph")


def decompose_even(g: MultiGraph) -> Decomposition:
    """Split a connected loop-free multigraph with evenly many edges into
    2-paths covering every edge exactly once."""
    _reject_loops(g)
    if not g.is_connected():
        raise InvalidInput("decompose_even requires a connected graph")
    if len(g.edges) % 2 != 0:
        raise InvalidInput("decompose_even requires an even number of edges")
    if not g.edges:
        return Decomposition(two_paths=())
    two_paths, leftover = _peel(dict(enumerate(g.edges)), anchor=0)
    assert leftover is None
    return Decomposition(two_paths=two_paths)


def decompose_odd_anchored(g: MultiGraph, anchor: int) -> Decomposition:
    """Split a connected loop-free multigraph with oddly many edges into
    2-paths plus one leftover edge incident to ``anchor``."""
    _reject_loops(g)
    if not 0 <= anchor < g.vertex_count:
        raise InvalidInput(f"anchor {anchor} out of range")
    if not g.is_connected():
        raise InvalidInput("decompose_odd_anchored requires a connected graph")
    if len(g.edges) % 2 != 1:
        raise InvalidInput("decompose_odd_anchored requires an odd number of edges")
    two_paths, leftover = _peel(dict(enumerate(g.edges)), anchor=anchor)
    assert leftover is not None
    if anchor not in g.edges[leftover]:
        raise AssertionError("leftover edge missed the anchor")
    return Decomposition(two_paths=two_paths, leftover_edge=leftover)


# ---------------------------------------------------------------------------
# Claw decomposition
# ---------------------------------------------------------------------------


def _even_cycles(g: MultiGraph) -> list[tuple[list[int], list[int]]]:
    """All even-length simple cycles as (vertex sequence, edge id sequence).

    Each cycle is listed once: rooted at its smallest vertex, oriented so the
    first edge id is below the closing edge id. Enumeration order is fixed by
    vertex and edge ids.
    """
    adj = g.adjacency()
    cycles: list[tuple[list[int], list[int]]] = []

    def extend(start: int, x: int, path_v: list[int], path_e: list[int], used_v: set[int]):
        for y, eid in adj[x]:
            if eid in path_e:
                continue
            if y == start:
                if path_e[0] < eid and len(path_e) % 2 == 1:
                    cycles.append((path_v[:], path_e + [eid]))
                continue
            if y < start or y in used_v:
                continue
            used_v.add(y)
            extend(start, y, path_v + [y], path_e + [eid], used_v)
            used_v.remove(y)

    for s in range(g.vertex_count):
        for y, eid in adj[s]:
            if y == s or y < s:
                continue
            extend(s, y, [s, y], [eid], {s, y})
    return cycles


def _edge_components(edges: dict[int, tuple[int, int]], vertex_count: int):
    """Connected components of an edge set, ordered by smallest edge id."""
    sets = DisjointSets(vertex_count)
    for u, v in edges.values():
        sets.union(u, v)
    by_root: dict[int, dict[int, tuple[int, int]]] = {}
    for eid in sorted(edges):
        root = sets.find(edges[eid][0])
        by_root.setdefault(root, {})[eid] = edges[eid]
    comps = list(by_root.values())
    comps.sort(key=lambda c: min(c))
    return comps


def decompose_with_claw(g: MultiGraph) -> Decomposition:
    """Split a connected loop-free multigraph containing an even cycle into
    2-paths, plus one claw when the edge count is odd.

    For odd edge counts: pick an even cycle C and an odd-size component of
    the remaining edges touching C at a vertex v; peel that component with
    anchor v, join its leftover edge with the two cycle edges at v into a
    claw, and peel the rest (an even connected remainder) into 2-paths.
    Candidate cycles, components, and anchors are scanned in a fixed order
    and the first structurally valid claw wins.
    """
    _reject_loops(g)
    if not g.is_connected():
        raise NotConnected("decompose_with_claw requires a connected graph")
    cycles = _even_cycles(g)
    if not cycles:
        raise PreconditionViolated("graph contains no even cycle")
    if len(g.edges) % 2 == 0:
        return decompose_even(g)

    all_ids = set(range(len(g.edges)))
    for path_v, path_e in cycles:
        cycle_ids = set(path_e)
        rest = {eid: g.edges[eid] for eid in sorted(all_ids - cycle_ids)}
        for comp in _edge_components(rest, g.vertex_count):
            if len(comp) % 2 == 0:
                continue
            comp_vertices = {x for e in comp.values() for x in e}
            for v in sorted(comp_vertices & set(path_v)):
                idx = path_v.index(v)
                c_before = path_e[idx - 1] if idx > 0 else path_e[-1]
                c_after = path_e[idx]
                comp_paths, leftover = _peel(comp, v)
                assert leftover is not None
                tips = []
                for eid in (leftover, c_before, c_after):
                    a, b = g.edges[eid]
                    tips.append(b if a == v else a)
                if len(set(tips)) != 3 or v in tips:
                    continue
                star_ids = all_ids - set(comp) - {c_before, c_after}
                star = {eid: g.edges[eid] for eid in sorted(star_ids)}
                if star:
                    star_support = {x for e in star.values() for x in e}
                    sets = DisjointSets(g.vertex_count)
                    for a, b in star.values():
                        sets.union(a, b)
                    root = sets.find(min(star_support))
                    if any(sets.find(x) != root for x in star_support):
                        continue
                    star_paths, star_leftover = _peel(star, min(star_support))
                    assert star_leftover is None
                else:
                    star_paths = ()
                claw = tuple(sorted((leftover, c_before, c_after)))
                return Decomposition(two_paths=comp_paths + star_paths, claw=claw)
    raise PreconditionViolated("no even cycle admits a claw decomposition")
