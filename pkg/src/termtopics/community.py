"""Generalized modularity and Leiden community detection on term networks.

The quality function is H_gamma = I - gamma * J where I is the fraction of
edge weight inside communities and J its expectation under a
degree-preserving random null model; gamma acts as a resolution parameter.
Optimization follows the Leiden scheme: queue-based local moving, a
refinement phase that merges only within local-move communities, then
aggregation, repeated until nothing changes.
"""

from __future__ import annotations

import heapq
import logging
import random
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import EmptyNetworkError
from .graph import TermNetwork

log = logging.getLogger(__name__)

# tracked vs recomputed quality must agree to this after every pass
_TRACKING_TOL = 1e-9


@dataclass(frozen=True)
class ModularityParams:
    gamma: float = 1.0
    seed: int = 42
    max_passes: int = 20

    def __post_init__(self):
        # gamma=0 is permitted here so the all-embracing limit is reachable;
        # the HTTP API rejects gamma <= 0 at its boundary.
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.max_passes < 1:
            raise ValueError("max_passes must be >= 1")


@dataclass(frozen=True)
class Partition:
    """Assignment of every vertex to exactly one community, indices dense."""

    membership: dict[str, int]
    communities: tuple[tuple[str, ...], ...]
    gamma: float
    seed: int
    quality: float
    converged: bool

    @property
    def community_count(self) -> int:
        return len(self.communities)


def _membership_by_vertex(net: TermNetwork, partition) -> list[int]:
    if isinstance(partition, Partition):
        mapping: Mapping[str, int] = partition.membership
    elif isinstance(partition, Mapping):
        mapping = partition
    elif isinstance(partition, Sequence):
        if len(partition) != net.vertex_count:
            raise ValueError("membership sequence length does not match vertex count")
        return [int(c) for c in partition]
    else:
        raise TypeError(f"unsupported partition type {type(partition)!r}")
    return [mapping[t] for t in net.vertices]


def generalized_modularity(net: TermNetwork, partition, gamma: float) -> float:
    """H_gamma of a candidate partition, double sums over ordered pairs.

    `partition` may be a Partition, a term->community mapping, or a
    community index per vertex in net.vertices order.
    """
    two_m = net.total_weight_2m
    if two_m <= 0:
        raise EmptyNetworkError("modularity is undefined on a network without edges")
    member = _membership_by_vertex(net, partition)

    tot: dict[int, float] = {}
    internal = 0.0
    for i, deg in enumerate(net.degrees):
        c = member[i]
        tot[c] = tot.get(c, 0.0) + deg
    for i, neigh in enumerate(net.adjacency):
        ci = member[i]
        for j, w in neigh.items():
            if j > i and member[j] == ci:
                internal += 2.0 * w  # ordered pairs: each edge counts twice
    coverage = internal / two_m
    expectation = sum(t * t for t in tot.values()) / (two_m * two_m)
    return coverage - gamma * expectation


class _AggGraph:
    """Working graph for Leiden; aggregation folds communities into vertices.

    `loop[v]` stores the full ordered-pair diagonal weight sum of the leaf
    edges absorbed into v, so total weight and modularity are preserved
    across aggregation levels.
    """

    __slots__ = ("n", "adj", "loop", "strength", "leaves", "two_m")

    def __init__(self, n, adj, loop, leaves):
        self.n = n
        self.adj = adj
        self.loop = loop
        self.strength = [loop[v] + sum(adj[v].values()) for v in range(n)]
        self.leaves = leaves
        self.two_m = sum(self.strength)

    @classmethod
    def from_network(cls, net: TermNetwork) -> "_AggGraph":
        adj = [dict(neigh) for neigh in net.adjacency]
        return cls(net.vertex_count, adj, [0.0] * net.vertex_count, [[i] for i in range(net.vertex_count)])


class _State:
    """Partition bookkeeping with O(1) move evaluation.

    Tracks per-community total strength and internal (ordered) weight plus
    the two global accumulators that make H_gamma an O(1) read.
    """

    def __init__(self, graph: _AggGraph, membership: list[int]):
        n_slots = max(membership) + 1
        self.membership = membership
        self.tot = [0.0] * n_slots
        self.inner = [0.0] * n_slots
        self.csize = [0] * n_slots
        for v, c in enumerate(membership):
            self.tot[c] += graph.strength[v]
            self.csize[c] += 1
            self.inner[c] += graph.loop[v]
        for v in range(graph.n):
            cv = membership[v]
            for u, w in graph.adj[v].items():
                if u > v and membership[u] == cv:
                    self.inner[cv] += 2.0 * w
        self.n_comms = sum(1 for s in self.csize if s > 0)
        self.free: list[int] = [c for c, s in enumerate(self.csize) if s == 0]
        heapq.heapify(self.free)
        self.inner_total = sum(self.inner)
        self.sum_tot_sq = sum(t * t for t in self.tot)

    def quality(self, gamma: float, two_m: float) -> float:
        return self.inner_total / two_m - gamma * self.sum_tot_sq / (two_m * two_m)

    def empty_candidate(self) -> int:
        return self.free[0] if self.free else len(self.tot)

    def _ensure_slot(self, c: int) -> None:
        while len(self.tot) <= c:
            self.tot.append(0.0)
            self.inner.append(0.0)
            self.csize.append(0)

    def move(self, v: int, b: int, k_v: float, loop_v: float, w_va: float, w_vb: float) -> None:
        a = self.membership[v]
        self._ensure_slot(b)
        if self.free and self.free[0] == b:
            heapq.heappop(self.free)
        if self.csize[b] == 0:
            self.n_comms += 1

        self.sum_tot_sq -= self.tot[a] * self.tot[a] + self.tot[b] * self.tot[b]
        self.tot[a] -= k_v
        self.tot[b] += k_v
        self.sum_tot_sq += self.tot[a] * self.tot[a] + self.tot[b] * self.tot[b]

        delta_a = 2.0 * w_va + loop_v
        delta_b = 2.0 * w_vb + loop_v
        self.inner[a] -= delta_a
        self.inner[b] += delta_b
        self.inner_total += delta_b - delta_a

        self.csize[a] -= 1
        self.csize[b] += 1
        self.membership[v] = b
        if self.csize[a] == 0:
            self.n_comms -= 1
            heapq.heappush(self.free, a)


def _local_move(graph: _AggGraph, state: _State, gamma: float, rng: random.Random) -> bool:
    """Greedy queue-based vertex moving; returns True if anything moved."""
    two_m = graph.two_m
    order = list(range(graph.n))
    rng.shuffle(order)
    queue = deque(order)
    queued = [True] * graph.n
    moved_any = False

    while queue:
        v = queue.popleft()
        queued[v] = False
        a = state.membership[v]
        k_v = graph.strength[v]

        acc: dict[int, float] = {}
        for u, w in graph.adj[v].items():
            c = state.membership[u]
            acc[c] = acc.get(c, 0.0) + w
        w_va = acc.get(a, 0.0)
        tot_a = state.tot[a]

        # candidates: neighbouring communities plus the cheapest empty one
        empty = state.empty_candidate()
        if empty not in acc:
            acc[empty] = 0.0

        best_comm = a
        best_gain = 0.0
        for b, w_vb in acc.items():
            if b == a:
                continue
            gain = 2.0 * (w_vb - w_va) - 2.0 * gamma * k_v * (state.tot[b] if b < len(state.tot) else 0.0) / two_m
            gain += 2.0 * gamma * k_v * (tot_a - k_v) / two_m
            if gain > best_gain or (gain == best_gain and best_gain > 0.0 and b < best_comm):
                best_comm = b
                best_gain = gain

        if best_gain > 0.0 and best_comm != a:
            w_vb = acc.get(best_comm, 0.0)
            state.move(v, best_comm, k_v, graph.loop[v], w_va, w_vb)
            moved_any = True
            for u in graph.adj[v]:
                if state.membership[u] != best_comm and not queued[u]:
                    queue.append(u)
                    queued[u] = True
    return moved_any


def _refine(graph: _AggGraph, state: _State, gamma: float, rng: random.Random) -> list[int]:
    """Refined partition: nodes merge only inside their local-move community,
    chosen uniformly among quality-non-decreasing merges."""
    two_m = graph.two_m
    ref = list(range(graph.n))
    ref_tot = list(graph.strength)
    ref_size = [1] * graph.n

    comm_members: dict[int, list[int]] = {}
    for v in range(graph.n):
        comm_members.setdefault(state.membership[v], []).append(v)

    for members in comm_members.values():
        if len(members) < 2:
            continue
        member_set = set(members)
        big_k = sum(graph.strength[v] for v in members)
        wrest = {
            v: sum(w for u, w in graph.adj[v].items() if u in member_set) for v in members
        }
        border = dict(wrest)  # per refined community, weight to the rest of the P-community

        well_connected = [
            v
            for v in members
            if wrest[v] >= gamma * graph.strength[v] * (big_k - graph.strength[v]) / two_m
        ]
        rng.shuffle(well_connected)

        for v in well_connected:
            if ref[v] != v or ref_size[v] > 1:
                continue  # only nodes still in their own singleton move
            k_v = graph.strength[v]
            acc: dict[int, float] = {}
            for u, w in graph.adj[v].items():
                if u in member_set:
                    rc = ref[u]
                    acc[rc] = acc.get(rc, 0.0) + w
            acc.pop(v, None)

            candidates = []
            for rc, w_vs in acc.items():
                tot_s = ref_tot[rc]
                if border[rc] < gamma * tot_s * (big_k - tot_s) / two_m:
                    continue  # target subset is not well connected within C
                if 2.0 * w_vs - 2.0 * gamma * k_v * tot_s / two_m >= 0.0:
                    candidates.append(rc)
            if not candidates:
                continue
            rc = rng.choice(sorted(candidates))
            ref[v] = rc
            ref_tot[rc] += k_v
            ref_size[rc] += 1
            border[rc] += wrest[v] - 2.0 * acc[rc]
            ref_size[v] = 0
    return ref


def _aggregate(
    graph: _AggGraph, refined: list[int], state: _State
) -> tuple[_AggGraph, list[int]]:
    """Collapse refined communities into vertices; the new initial partition
    groups them by their local-move community."""
    remap: dict[int, int] = {}
    for v in range(graph.n):
        rc = refined[v]
        if rc not in remap:
            remap[rc] = len(remap)
    n_new = len(remap)

    adj: list[dict[int, float]] = [{} for _ in range(n_new)]
    loop = [0.0] * n_new
    leaves: list[list[int]] = [[] for _ in range(n_new)]
    parent_raw = [-1] * n_new

    for v in range(graph.n):
        nv = remap[refined[v]]
        leaves[nv].extend(graph.leaves[v])
        loop[nv] += graph.loop[v]
        parent_raw[nv] = state.membership[v]
        for u, w in graph.adj[v].items():
            if u <= v:
                continue
            nu = remap[refined[u]]
            if nu == nv:
                loop[nv] += 2.0 * w
            else:
                adj[nv][nu] = adj[nv].get(nu, 0.0) + w
                adj[nu][nv] = adj[nu].get(nv, 0.0) + w

    comm_remap: dict[int, int] = {}
    membership = []
    for nv in range(n_new):
        c = parent_raw[nv]
        if c not in comm_remap:
            comm_remap[c] = len(comm_remap)
        membership.append(comm_remap[c])
    return _AggGraph(n_new, adj, loop, leaves), membership


def _connected_split(net: TermNetwork, member: list[int]) -> list[int]:
    """Split every community into its connected components.

    For gamma > 0 this never decreases H_gamma; for gamma = 0 it leaves it
    unchanged, so it is always safe to enforce the connectivity invariant.
    """
    n = net.vertex_count
    result = [-1] * n
    next_c = 0
    for start in range(n):
        if result[start] != -1:
            continue
        c = member[start]
        result[start] = next_c
        stack = [start]
        while stack:
            v = stack.pop()
            for u in net.adjacency[v]:
                if result[u] == -1 and member[u] == c:
                    result[u] = next_c
                    stack.append(u)
        next_c += 1
    return result


def _renumber_by_size(net: TermNetwork, member: list[int]) -> list[int]:
    """Dense community ids, largest community first (ties: first vertex)."""
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(member):
        groups.setdefault(c, []).append(v)
    order = sorted(groups.values(), key=lambda vs: (-len(vs), vs[0]))
    remap = {}
    for new_c, vs in enumerate(order):
        remap[member[vs[0]]] = new_c
    return [remap[c] for c in member]


def _to_partition(
    net: TermNetwork, member: list[int], params: ModularityParams, converged: bool
) -> Partition:
    member = _renumber_by_size(net, member)
    count = max(member) + 1
    groups: list[list[str]] = [[] for _ in range(count)]
    for v, c in enumerate(member):
        groups[c].append(net.vertices[v])
    quality = generalized_modularity(net, member, params.gamma)
    return Partition(
        membership={net.vertices[v]: c for v, c in enumerate(member)},
        communities=tuple(tuple(g) for g in groups),
        gamma=params.gamma,
        seed=params.seed,
        quality=quality,
        converged=converged,
    )


def leiden_partition(net: TermNetwork, params: ModularityParams | None = None) -> Partition:
    """Find a high-modularity partition; deterministic given (net, gamma, seed)."""
    params = params or ModularityParams()
    if net.vertex_count == 0:
        raise EmptyNetworkError("cannot partition an empty network")
    if net.total_weight_2m <= 0:
        raise EmptyNetworkError("modularity is undefined on a network without edges")

    rng = random.Random(params.seed)
    graph = _AggGraph.from_network(net)
    state = _State(graph, list(range(graph.n)))
    gamma = params.gamma
    converged = False

    for _ in range(params.max_passes):
        _local_move(graph, state, gamma, rng)

        recomputed = _recompute_quality(graph, state.membership, gamma)
        tracked = state.quality(gamma, graph.two_m)
        if abs(recomputed - tracked) > _TRACKING_TOL:
            raise AssertionError(
                f"tracked quality {tracked} drifted from recomputation {recomputed}"
            )

        if state.n_comms == graph.n:
            converged = True
            break
        refined = _refine(graph, state, gamma, rng)
        if len(set(refined)) == graph.n:
            # aggregation would not change the graph; local moving is stable
            converged = True
            break
        graph, membership = _aggregate(graph, refined, state)
        state = _State(graph, membership)

    leaf_member = [0] * net.vertex_count
    for v in range(graph.n):
        c = state.membership[v]
        for leaf in graph.leaves[v]:
            leaf_member[leaf] = c
    leaf_member = _connected_split(net, leaf_member)

    partition = _to_partition(net, leaf_member, params, converged)
    # safety net: never return worse than the trivial all-in-one baseline,
    # whose quality is exactly 1 - gamma (every edge internal, tot = 2m)
    if partition.quality < (1.0 - gamma) - 1e-12:
        log.warning("falling back to connected components: H=%g < 1-gamma", partition.quality)
        fallback = _connected_split(net, [0] * net.vertex_count)
        partition = _to_partition(net, fallback, params, converged)
    return partition


def _recompute_quality(graph: _AggGraph, membership: list[int], gamma: float) -> float:
    """From-scratch H_gamma on the working graph, for tracking validation."""
    tot: dict[int, float] = {}
    internal = 0.0
    for v in range(graph.n):
        c = membership[v]
        tot[c] = tot.get(c, 0.0) + graph.strength[v]
        internal += graph.loop[v]
        for u, w in graph.adj[v].items():
            if u > v and membership[u] == c:
                internal += 2.0 * w
    two_m = graph.two_m
    return internal / two_m - gamma * sum(t * t for t in tot.values()) / (two_m * two_m)


@dataclass(frozen=True)
class SweepPoint:
    gamma: float
    partition: Partition
    quality: float
    community_count: int


def resolution_sweep(
    net: TermNetwork, gammas: list[float], seed: int = 42, max_passes: int = 20
) -> list[SweepPoint]:
    """One Leiden run per gamma with a shared seed, in input order."""
    if not gammas:
        raise ValueError("gammas must be non-empty")
    points = []
    for gamma in gammas:
        part = leiden_partition(net, ModularityParams(gamma=gamma, seed=seed, max_passes=max_passes))
        points.append(SweepPoint(gamma, part, part.quality, part.community_count))
    return points


def write_partition(partition: Partition, path: str | Path) -> None:
    """Export `term<TAB>community` lines under a run-metadata comment header."""
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(f"# gamma={partition.gamma!r}\n")
        fh.write(f"# seed={partition.seed!r}\n")
        fh.write(f"# H={partition.quality!r}\n")
        fh.write(f"# community_count={partition.community_count}\n")
        for term in sorted(partition.membership):
            fh.write(f"{term}\t{partition.membership[term]}\n")


def read_partition(path: str | Path) -> tuple[dict[str, int], dict[str, str]]:
    """Read a partition export; returns (membership, header metadata)."""
    membership: dict[str, int] = {}
    meta: dict[str, str] = {}
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value.strip()
                continue
            term, _, comm = line.rpartition("\t")
            membership[term] = int(comm)
    return membership, meta
