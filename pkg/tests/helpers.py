"""Seeded instance generators and independent checking oracles for the tests."""

from __future__ import annotations

import random
from itertools import permutations

from patrolkit import MultiGraph, from_matrix, from_points, make_graph, subdivide_integer


def random_points(rng: random.Random, n: int) -> list[tuple[float, float]]:
    pts: list[tuple[float, float]] = []
    seen: set[tuple[float, float]] = set()
    while len(pts) < n:
        p = (round(rng.random(), 6), round(rng.random(), 6))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return pts


def euclidean(rng: random.Random, n: int):
    return from_points(random_points(rng, n))


def integer_metric(rng: random.Random, n: int, max_entry: int):
    """Random integer metric: shortest-path closure of random complete weights."""
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = rng.randint(1, max_entry)
    for m in range(n):
        for i in range(n):
            for j in range(n):
                via = d[i][m] + d[m][j]
                if via < d[i][j]:
                    d[i][j] = d[j][i] = via
    return from_matrix(d)


def connected_multigraph(
    rng: random.Random,
    max_vertices: int,
    max_edges: int,
    allow_loops: bool = False,
) -> MultiGraph:
    """Random spanning tree plus extra edges; parallels always possible."""
    n = rng.randint(1 if allow_loops else 2, max_vertices)
    edges: list[tuple[int, int]] = [(rng.randrange(v), v) for v in range(1, n)]
    target = rng.randint(len(edges), max(len(edges), max_edges))
    while len(edges) < target:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v and not (allow_loops and (n == 1 or rng.random() < 0.3)):
            continue
        edges.append((min(u, v), max(u, v)))
    return make_graph(n, edges)


def connected_simple_graph(rng: random.Random, max_vertices: int, max_edges: int) -> MultiGraph:
    n = rng.randint(2, max_vertices)
    edges: list[tuple[int, int]] = []
    present: set[tuple[int, int]] = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v))
        present.add((u, v))
    budget = rng.randint(0, max(0, max_edges - len(edges)))
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
    rng.shuffle(candidates)
    for e in candidates[:budget]:
        edges.append(e)
        present.add(e)
    return make_graph(n, edges)


def check_two_path_cover(g: MultiGraph, dec) -> None:
    """Every edge id covered exactly once, pairs share a vertex, the claw (if
    any) is three edges sharing exactly one common vertex."""
    assert dec.covered_ids() == list(range(len(g.edges)))
    for a, b in dec.two_paths:
        assert a != b
        assert set(g.edges[a]) & set(g.edges[b]), f"2-path ({a}, {b}) has no shared vertex"
    if dec.claw is not None:
        e0, e1, e2 = (set(g.edges[i]) for i in dec.claw)
        common = e0 & e1 & e2
        assert len(common) == 1, f"claw {dec.claw} has no unique center"
        v = next(iter(common))
        tips = sorted((s - {v}).pop() for s in (e0, e1, e2))
        assert len(set(tips)) == 3, f"claw {dec.claw} tips collide"


def is_eulerian(g: MultiGraph) -> bool:
    return all(d % 2 == 0 for d in g.degrees())


def matchable_step(a, b, allowed) -> bool:
    """Can the unlabeled robots at positions ``a`` reach positions ``b`` in
    one synchronous step of stay-or-move-one-edge?"""
    return any(
        all(q in allowed[p] for p, q in zip(a, perm)) for perm in set(permutations(b))
    )


def replay_witness(space, k: int, ell: int, witness, periods: int = 3) -> None:
    """Independently re-simulate a periodic witness.

    Checks every transition is a legal synchronous unit move, the stored
    deadline counters match a from-scratch simulation (all sites deemed
    visited at time 0), and no revisit gap along ``periods`` unrollings of
    the cycle exceeds ``ell``.
    """
    unit = subdivide_integer(space)
    allowed = [frozenset((p,) + unit.neighbors[p]) for p in range(unit.total_count)]
    seq = list(witness.prefix) + list(witness.cycle) * periods
    assert witness.cycle, "witness must have a nonempty cycle"
    for c in seq:
        assert len(c.positions) == k
        assert tuple(sorted(c.positions)) == c.positions
        assert all(0 <= p < unit.total_count for p in c.positions)
    for a, b in zip(seq, seq[1:]):
        assert matchable_step(a.positions, b.positions, allowed)

    last = [0] * space.n
    counters = [0] * space.n
    for t, c in enumerate(seq):
        occupied = {p for p in c.positions if p < space.n}
        for s in range(space.n):
            if s in occupied:
                if t > 0:
                    assert t - last[s] <= ell, f"site {s} gap {t - last[s]} > {ell}"
                last[s] = t
                counters[s] = 0
            elif t > 0:
                counters[s] += 1
        assert tuple(counters) == c.deadlines, f"stored deadlines diverge at step {t}"
    horizon = len(seq) - 1
    for s in range(space.n):
        assert horizon - last[s] <= ell, f"site {s} left stale at the horizon"
