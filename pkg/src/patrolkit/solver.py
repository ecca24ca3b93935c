"""Cyclic patrol schedules: robot allocation, candidate search, and oracles.

A cyclic solution splits the sites into at most k groups, runs one closed
tour per group, and spaces each group's robots evenly along its tour, so the
group's revisit latency is tour length over robot count and the solution
latency is the worst group. The solver scans partitions induced by cutting
few heavy edges out of the minimum spanning tree, which is enough to come
within a (1 + epsilon) factor of the best cyclic solution up to the tour
builder's own approximation factor.
"""

from __future__ import annotations

import heapq
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import spanning
from .errors import InfeasibleAssignment, InvalidInput, LimitExceeded
from .metric import MetricSpace
from .spanning import Partition, make_partition
from .tsp import Tour, TspAlgorithm, tour_exact

BRUTE_FORCE_MAX_SITES = 10
BRUTE_FORCE_MAX_ROBOTS = 5


@dataclass(frozen=True)
class SolverConfig:
    k: int
    epsilon: float
    tsp: TspAlgorithm
    parallel: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInput("k must be at least 1")
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise InvalidInput("epsilon must be a positive real")


@dataclass(frozen=True)
class CyclicSolution:
    """A partition with one tour per part and an even robot split."""

    partition: Partition
    tours: tuple[Tour, ...]
    robots: tuple[int, ...]
    latency: float


def _assemble(partition: Partition, tours, robots) -> CyclicSolution:
    tours = tuple(tours)
    robots = tuple(int(r) for r in robots)
    if not (len(partition.parts) == len(tours) == len(robots)):
        raise InvalidInput("partition, tours, and robots must align")
    for part, tour in zip(partition.parts, tours):
        if set(part) != set(tour.order):
            raise InvalidInput("tour support does not match its part")
    if any(r < 1 for r in robots):
        raise InvalidInput("every part needs at least one robot")
    latency = max(t.length / r for t, r in zip(tours, robots))
    return CyclicSolution(partition=partition, tours=tours, robots=robots, latency=latency)


def assign_robots(tour_lengths, k: int) -> list[int]:
    """Split k robots over tours so the worst length-per-robot ratio is least.

    Greedy: start with one robot per tour, then repeatedly give the tour with
    the largest current ratio one more robot, ties toward the lowest index.
    This greedy is exchange-optimal for the max ratio objective.
    """
    lengths = [float(x) for x in tour_lengths]
    if not lengths:
        raise InvalidInput("at least one tour required")
    if any(x < 0 or not math.isfinite(x) for x in lengths):
        raise InvalidInput("tour lengths must be nonnegative reals")
    t = len(lengths)
    if k < t:
        raise InfeasibleAssignment(f"{k} robots cannot cover {t} tours")
    robots = [1] * t
    heap = [(-lengths[i], i) for i in range(t)]
    heapq.heapify(heap)
    for _ in range(k - t):
        _, i = heapq.heappop(heap)
        robots[i] += 1
        heapq.heappush(heap, (-lengths[i] / robots[i], i))
    return robots


def evaluate(space: MetricSpace, partition: Partition, k: int, algo: TspAlgorithm) -> CyclicSolution:
    """Tour every part with ``algo``, split ``k`` robots, report the latency."""
    partition = make_partition(partition.parts, space.n)
    if k < 1:
        raise InvalidInput("k must be at least 1")
    tours = [algo.tour(space, part) for part in partition.parts]
    robots = assign_robots([t.length for t in tours], k)
    return _assemble(partition, tours, robots)


def _cut_subsets(m: int, max_size: int) -> list[tuple[int, ...]]:
    """All index subsets of size <= max_size, in colexicographic order."""
    subsets: list[tuple[int, ...]] = []
    for size in range(min(m, max_size) + 1):
        subsets.extend(itertools.combinations(range(m), size))
    subsets.sort(key=lambda s: sum(1 << i for i in s))
    return subsets


def solve(space: MetricSpace, config: SolverConfig) -> CyclicSolution:
    """Best cyclic solution over partitions cut from the heavy MST edges.

    Remove the ceil(k * (1 + k/epsilon)) heaviest MST edges; every candidate
    partition consists of the components left after cutting some subset of at
    most k - 1 of them from the tree (the other removed edges are merged
    back). The best candidate is within (1 + epsilon) * gamma of the optimal
    cyclic latency. Candidates are scanned in colexicographic order of the
    cut subset and ties keep the earliest candidate, so results do not depend
    on the parallel flag.
    """
    k = config.k
    full = spanning.mst(space, range(space.n))
    budget = math.ceil(k * (1 + k / config.epsilon))
    removed, remainder = spanning.remove_heaviest(full, budget)
    base = make_partition(remainder.components, space.n)
    cuts = _cut_subsets(len(removed), k - 1)

    cache: dict[tuple[int, ...], Tour] = {}

    def tour_of(part: tuple[int, ...]) -> Tour:
        got = cache.get(part)
        if got is None:
            got = config.tsp.tour(space, part)
            cache[part] = got
        return got

    def candidate(rank_cut: tuple[int, tuple[int, ...]]) -> tuple[float, int, CyclicSolution] | None:
        rank, cut = rank_cut
        cut_set = set(cut)
        keep = [e for i, e in enumerate(removed) if i not in cut_set]
        part = spanning.coarsen(base, space, keep)
        if len(part.parts) > k:
            return None
        tours = [tour_of(p) for p in part.parts]
        robots = assign_robots([t.length for t in tours], k)
        sol = _assemble(part, tours, robots)
        return sol.latency, rank, sol

    jobs = list(enumerate(cuts))
    if config.parallel:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(candidate, jobs))
    else:
        results = [candidate(job) for job in jobs]
    best = min((r for r in results if r is not None), key=lambda r: (r[0], r[1]))
    return best[2]


def _set_partitions(n: int, max_parts: int):
    """Partitions of range(n) into at most max_parts groups, in restricted
    growth string order."""
    labels = [0] * n

    def rec(i: int, used: int):
        if i == n:
            parts: list[list[int]] = [[] for _ in range(used)]
            for idx, g in enumerate(labels):
                parts[g].append(idx)
            yield tuple(tuple(p) for p in parts)
            return
        for g in range(min(used + 1, max_parts)):
            labels[i] = g
            yield from rec(i + 1, max(used, g + 1))

    if n == 0:
        return
    yield from rec(1, 1)


def _compositions(total: int, parts: int):
    """Positive integer compositions of ``total`` into ``parts`` summands."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def brute_force_cyclic(space: MetricSpace, k: int) -> CyclicSolution:
    """Optimal cyclic solution by exhausting partitions and robot splits.

    Exact tours come from Held-Karp with results memoized per part. Only
    instances with at most 10 sites and 5 robots are accepted.
    """
    if k < 1:
        raise InvalidInput("k must be at least 1")
    if space.n > BRUTE_FORCE_MAX_SITES or k > BRUTE_FORCE_MAX_ROBOTS:
        raise LimitExceeded(
            f"brute force handles at most {BRUTE_FORCE_MAX_SITES} sites "
            f"and {BRUTE_FORCE_MAX_ROBOTS} robots"
        )
    cache: dict[tuple[int, ...], Tour] = {}

    def tour_of(part: tuple[int, ...]) -> Tour:
        got = cache.get(part)
        if got is None:
            got = tour_exact(space, part)
            cache[part] = got
        return got

    best: tuple[float, int, tuple, tuple, tuple] | None = None
    for rank, parts in enumerate(_set_partitions(space.n, min(k, space.n))):
        tours = tuple(tour_of(p) for p in parts)
        lengths = [t.length for t in tours]
        t = len(parts)
        comp_best: tuple[float, tuple[int, ...]] | None = None
        for comp in _compositions(k, t):
            ratio = max(l / r for l, r in zip(lengths, comp))
            if comp_best is None or ratio < comp_best[0]:
                comp_best = (ratio, comp)
        assert comp_best is not None
        if best is None or comp_best[0] < best[0]:
            best = (comp_best[0], rank, parts, tours, comp_best[1])
    assert best is not None
    partition = make_partition(best[2], space.n)
    return _assemble(partition, best[3], best[4])
