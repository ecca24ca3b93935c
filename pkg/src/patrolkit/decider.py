"""Exact latency decisions for integer metrics via configuration-graph search.

Distances are realized as unit-length edges by subdividing each pairwise
connection with dummy nodes; robots then move synchronously, one hop per
step. A configuration records the (sorted) robot positions plus, per site,
the number of steps since its last visit. A revisit gap of g drives that
counter up to g - 1, so keeping every counter strictly below ell is the same
as keeping every gap at most ell. Latency ell is achievable iff the
configuration graph restricted to such states contains a reachable cycle,
because any infinite violation-free run must repeat a configuration and can
then loop forever.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .errors import InvalidInput, LimitExceeded
from .metric import MetricSpace, subdivide_integer

STATE_LIMIT = 10_000_000


@dataclass(frozen=True)
class Configuration:
    """Sorted robot positions (unit-graph node ids) and per-site staleness."""

    positions: tuple[int, ...]
    deadlines: tuple[int, ...]


@dataclass(frozen=True)
class PeriodicWitness:
    """A schedule: walk the prefix once, then repeat the cycle forever."""

    prefix: tuple[Configuration, ...]
    cycle: tuple[Configuration, ...]


def _search(space: MetricSpace, k: int, ell: int):
    """Explore all violation-free configurations reachable from the starts.

    Returns (configs, succs, parents, alive) where configs holds
    (position id, deadlines) pairs, alive flags the configurations from
    which play can continue forever, and parents give BFS discovery edges.
    """
    unit = subdivide_integer(space)
    n = space.n
    total = unit.total_count
    if total**k * (ell + 1) ** n > STATE_LIMIT:
        raise LimitExceeded(
            f"state bound {total}^{k} * {ell + 1}^{n} exceeds {STATE_LIMIT}"
        )
    moves = [tuple(sorted((p,) + unit.neighbors[p])) for p in range(total)]

    pos_index: dict[tuple[int, ...], int] = {}
    pos_list: list[tuple[int, ...]] = []
    pos_mask: list[int] = []
    pos_succ: list[list[int] | None] = []

    def intern_pos(pos: tuple[int, ...]) -> int:
        pid = pos_index.get(pos)
        if pid is None:
            pid = len(pos_list)
            pos_index[pos] = pid
            pos_list.append(pos)
            mask = 0
            for p in pos:
                if p < n:
                    mask |= 1 << p
            pos_mask.append(mask)
            pos_succ.append(None)
        return pid

    def successors_of(pid: int) -> list[int]:
        got = pos_succ[pid]
        if got is None:
            raw = {tuple(sorted(c)) for c in product(*(moves[p] for p in pos_list[pid]))}
            got = [intern_pos(pos) for pos in sorted(raw)]
            pos_succ[pid] = got
        return got

    configs: list[tuple[int, tuple[int, ...]]] = []
    index: dict[tuple[int, tuple[int, ...]], int] = {}
    parents: list[int] = []
    succs: list[list[int]] = []
    zero = (0,) * n
    queue: deque[int] = deque()
    for combo in combinations_with_replacement(range(n), k):
        pid = intern_pos(combo)
        key = (pid, zero)
        if key not in index:
            index[key] = len(configs)
            configs.append(key)
            parents.append(-1)
            succs.append([])
            queue.append(index[key])
    while queue:
        cid = queue.popleft()
        pid, dl = configs[cid]
        out = []
        for npid in successors_of(pid):
            mask = pos_mask[npid]
            ndl: list[int] = []
            ok = True
            for s in range(n):
                if (mask >> s) & 1:
                    ndl.append(0)
                else:
                    v = dl[s] + 1
                    if v >= ell:
                        ok = False
                        break
                    ndl.append(v)
            if not ok:
                continue
            key = (npid, tuple(ndl))
            nid = index.get(key)
            if nid is None:
                nid = len(configs)
                index[key] = nid
                configs.append(key)
                parents.append(cid)
                succs.append([])
                queue.append(nid)
            out.append(nid)
        succs[cid] = out

    # trim configurations that cannot keep going forever
    count = len(configs)
    outdeg = [len(s) for s in succs]
    preds: list[list[int]] = [[] for _ in range(count)]
    for c, out in enumerate(succs):
        for d in out:
            preds[d].append(c)
    alive = [True] * count
    dead = deque(c for c in range(count) if outdeg[c] == 0)
    while dead:
        c = dead.popleft()
        alive[c] = False
        for p in preds[c]:
            outdeg[p] -= 1
            if outdeg[p] == 0:
                dead.append(p)
    return configs, pos_list, succs, parents, alive


def decide(space: MetricSpace, k: int, ell: int) -> tuple[bool, PeriodicWitness | None]:
    """Can k robots keep every site's revisit gap at most ell, forever?

    Requires an integer metric, k >= 1, ell >= 1. Refuses instances whose
    configuration bound exceeds STATE_LIMIT. On a yes answer, also returns
    the canonical periodic witness: from the smallest surviving
    configuration, repeatedly step to the smallest surviving successor until
    a configuration repeats.
    """
    if k < 1:
        raise InvalidInput("k must be at least 1")
    if ell < 1:
        raise InvalidInput("ell must be at least 1")
    configs, pos_list, succs, parents, alive = _search(space, k, ell)
    if not any(alive):
        return False, None

    def key_of(cid: int):
        pid, dl = configs[cid]
        return (pos_list[pid], dl)

    c0 = min((c for c in range(len(configs)) if alive[c]), key=key_of)
    path = [c0]
    while parents[path[-1]] != -1:
        path.append(parents[path[-1]])
    path.reverse()
    walk = [c0]
    seen_at = {c0: 0}
    while True:
        cur = walk[-1]
        nxt = min((d for d in succs[cur] if alive[d]), key=key_of)
        at = seen_at.get(nxt)
        if at is not None:
            pre, cycle = walk[:at], walk[at:]
            break
        seen_at[nxt] = len(walk)
        walk.append(nxt)

    def snapshot(cid: int) -> Configuration:
        pid, dl = configs[cid]
        return Configuration(positions=pos_list[pid], deadlines=dl)

    witness = PeriodicWitness(
        prefix=tuple(snapshot(c) for c in path[:-1] + pre),
        cycle=tuple(snapshot(c) for c in cycle),
    )
    return True, witness


def minimal_latency(space: MetricSpace, k: int) -> int:
    """Smallest integer ell for which decide says yes.

    With at least as many robots as sites the answer is 0 (park one robot on
    every site). Otherwise scan ell = 1, 2, ... upward; n times the largest
    pairwise distance always suffices, since one robot can ride a full tour
    while the rest idle, so the scan stops no later than that.
    """
    if k < 1:
        raise InvalidInput("k must be at least 1")
    subdivide_integer(space)  # validates the integer precondition
    if k >= space.n:
        return 0
    max_d = max(space.dist[i][j] for i in range(space.n) for j in range(i + 1, space.n))
    upper = space.n * int(max_d)
    unit = subdivide_integer(space)
    if unit.total_count**k * (upper + 1) ** space.n > STATE_LIMIT:
        raise LimitExceeded(
            f"scan bound {unit.total_count}^{k} * {upper + 1}^{space.n} "
            f"exceeds {STATE_LIMIT}"
        )
    for ell in range(1, upper + 1):
        answer, _ = decide(space, k, ell)
        if answer:
            return ell
    raise AssertionError("scan exhausted below its proven upper bound")
