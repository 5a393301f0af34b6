"""Exhaustive enumeration of k-subspaces and the graphs they carry.

The full graph has every k-subspace of F_q^n as a vertex, with edges
between subspaces meeting in dimension k-1; the strength-t graph is the
subgraph induced on codes of strength >= t.  Everything here is the
brute-force oracle side of the package: vertex sets are enumerated
completely (pivot-pattern generation, canonically sorted), adjacency is
materialized, and distances come from genuine breadth-first search (run
as vectorized frontier expansion so all-pairs sweeps stay inside the
stated ten-minute desk budget).

Graph distance in the full graph coincides with k - dim(x ∩ y); the
module computes both independently (BFS vs. stacked-basis ranks) so the
identity, and the isometry of induced subgraphs, can be *checked* rather
than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import inf

import numpy as np

from . import bulk
from .codes import LinearCode
from .errors import (
    AllPairsTooLargeError,
    BadTError,
    DimensionMismatchError,
    EnumerationTooLargeError,
    InternalInvariantError,
    VertexAbsentError,
)
from .gf import FieldCtx
from .linalg import (
    MatrixGF,
    Subspace,
    complement_basis,
    hyperplanes_containing,
    projective_reps,
    rref,
    subspace_count,
)

ENUM_CAP = 1 << 21
ALL_PAIRS_CAP = 1 << 25  # max number of vertex pairs in all-pairs verification


# -- enumeration ----------------------------------------------------------------

class SubspaceIndex:
    """All k-subspaces of F_q^n, canonically ordered.

    bases[i] is the RREF basis of subspace i as a (k, n) uint8 block;
    the table is sorted lexicographically by row-major entries, so the
    ordering is reproducible across runs and platforms.
    """

    def __init__(self, ctx: FieldCtx, n: int, k: int, bases: np.ndarray):
        self.ctx = ctx
        self.n = n
        self.k = k
        self.bases = bases
        self._key_to_id: dict[bytes, int] | None = None
        self._strength_all: np.ndarray | None = None

    def __len__(self) -> int:
        return self.bases.shape[0]

    def subspace_at(self, i: int) -> Subspace:
        rows = [tuple(int(x) for x in r) for r in self.bases[i]]
        return Subspace(self.ctx, self.n, MatrixGF(self.ctx, rows, ncols=self.n))

    def code_at(self, i: int) -> LinearCode:
        return LinearCode(self.subspace_at(i))

    def index_of(self, s) -> int:
        """Position of a Subspace/LinearCode in the table."""
        if isinstance(s, LinearCode):
            s = s.space
        if self._key_to_id is None:
            flat = self.bases.reshape(len(self), -1)
            self._key_to_id = {flat[i].tobytes(): i for i in range(len(self))}
        key = np.array(
            [x for row in s.basis.rows for x in row], dtype=np.uint8
        ).tobytes()
        got = self._key_to_id.get(key)
        if got is None:
            raise VertexAbsentError("subspace not found in index")
        return got

    def strength_all(self) -> np.ndarray:
        """Strength of every subspace, via shortest dependent column subsets."""
        if self._strength_all is None:
            self._strength_all = _bulk_strengths(self.ctx, self.bases, self.n, self.k)
        return self._strength_all


def _bulk_strengths(ctx: FieldCtx, bases: np.ndarray, n: int, k: int) -> np.ndarray:
    v = bases.shape[0]
    dual_dist = np.zeros(v, dtype=np.int16)  # 0 = no dependency found yet
    alive = np.ones(v, dtype=bool)
    for s in range(1, min(k + 1, n) + 1):
        if not alive.any():
            break
        for cols in itertools.combinations(range(n), s):
            ids = np.nonzero(alive)[0]
            if ids.size == 0:
                break
            sub = bases[ids][:, :, list(cols)]
            ranks = bulk.batched_rank(ctx, sub)
            dep = ranks < s
            if dep.any():
                hit = ids[dep]
                dual_dist[hit] = s
                alive[hit] = False
    out = np.where(dual_dist == 0, k, np.minimum(dual_dist - 1, k)).astype(np.int16)
    return out


def enumerate_subspaces(
    ctx: FieldCtx, n: int, k: int, max_count: int = ENUM_CAP
) -> SubspaceIndex:
    """Complete duplicate-free enumeration via RREF pivot patterns."""
    if not 0 <= k <= n:
        raise DimensionMismatchError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = subspace_count(n, k, ctx.q)
    if total > max_count:
        raise EnumerationTooLargeError(
            f"{total} subspaces exceed the cap {max_count}"
        )
    q = ctx.q
    out = np.zeros((total, k, n), dtype=np.uint8)
    pos = 0
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivot_set
        ]
        cnt = q ** len(free)
        block = np.zeros((cnt, k, n), dtype=np.uint8)
        for i, p in enumerate(pivots):
            block[:, i, p] = 1
        if free:
            encs = np.arange(cnt, dtype=np.int64)
            for m, (i, j) in enumerate(free):
                block[:, i, j] = (encs // q**m) % q
        out[pos : pos + cnt] = block
        pos += cnt
    if pos != total:
        raise InternalInvariantError(
            f"enumerated {pos} subspaces, expected {total}"
        )
    flat = out.reshape(total, k * n) if total else out.reshape(0, k * n)
    if k * n:
        order = np.lexsort(flat.T[::-1])
        out = out[order]
    return SubspaceIndex(ctx, n, k, out)


# -- metric ------------------------------------------------------------------------

def grassmann_distance(x: Subspace, y: Subspace) -> int:
    """k - dim(x ∩ y) = rank of the stacked bases minus k."""
    if x.dim != y.dim:
        raise DimensionMismatchError("subspaces of different dimension")
    x._check_ambient(y)
    _, rank = rref(x.basis.stack(y.basis))
    return rank - x.dim


# -- graphs -------------------------------------------------------------------------

class GrassmannGraph:
    """Full graph or strength-t induced subgraph over a SubspaceIndex.

    vertex_ids maps graph positions to index positions.  Adjacency is a
    dense boolean matrix, built lazily by the shared-hyperplane bucket
    scan (or the complete-graph shortcut when k is 1 or n-1, where every
    distinct pair meets in dimension k-1).
    """

    def __init__(self, index: SubspaceIndex, t: int | None, vertex_ids: np.ndarray):
        self.index = index
        self.t = t
        self.vertex_ids = vertex_ids
        self._adjacency: np.ndarray | None = None
        self._all_pairs: np.ndarray | None = None

    @property
    def mode(self) -> str:
        return "full" if self.t is None else "induced"

    @property
    def num_vertices(self) -> int:
        return int(self.vertex_ids.shape[0])

    def vertex_bases(self) -> np.ndarray:
        return self.index.bases[self.vertex_ids]

    def subspace_at(self, i: int) -> Subspace:
        return self.index.subspace_at(int(self.vertex_ids[i]))

    def position_of(self, s) -> int:
        gid = self.index.index_of(s)
        pos = np.searchsorted(self.vertex_ids, gid)
        if pos >= self.num_vertices or self.vertex_ids[pos] != gid:
            raise VertexAbsentError("subspace is not a vertex of this graph")
        return int(pos)

    def adjacency(self) -> np.ndarray:
        if self._adjacency is None:
            self._adjacency = _adjacency_buckets(self)
        return self._adjacency


def build_gamma(index: SubspaceIndex) -> GrassmannGraph:
    return GrassmannGraph(index, None, np.arange(len(index), dtype=np.int64))


def build_delta(
    index: SubspaceIndex, t: int, gamma: GrassmannGraph | None = None
) -> GrassmannGraph:
    """Subgraph induced on the strength-t class.

    When the full graph's adjacency has already been materialized, pass
    it as `gamma`: the induced adjacency is the row/column slice of it.
    """
    if not 1 <= t <= index.k:
        raise BadTError(f"t must be in [1, k={index.k}], got {t}")
    mask = index.strength_all() >= t
    ids = np.nonzero(mask)[0].astype(np.int64)
    graph = GrassmannGraph(index, t, ids)
    if gamma is not None and gamma._adjacency is not None and gamma.index is index:
        graph._adjacency = gamma._adjacency[np.ix_(ids, ids)]
    return graph


def _is_complete_case(n: int, k: int) -> bool:
    return k == 1 or k == n - 1


def _adjacency_buckets(graph: GrassmannGraph) -> np.ndarray:
    """Edges via buckets of vertices sharing a (k-1)-subspace.

    Two distinct k-spaces are adjacent iff they share exactly one common
    hyperplane, so every bucket is a clique and every edge lands in
    exactly one bucket.
    """
    v = graph.num_vertices
    n, k = graph.index.n, graph.index.k
    adj = np.zeros((v, v), dtype=bool)
    if v <= 1 or k == 0:
        return adj
    if _is_complete_case(n, k):
        adj[:] = True
        np.fill_diagonal(adj, False)
        return adj
    buckets: dict = {}
    zero = Subspace.zero(graph.index.ctx, n)
    for pos in range(v):
        sub = graph.subspace_at(pos)
        for h in hyperplanes_containing(sub, zero):
            buckets.setdefault(h.basis.rows, []).append(pos)
    for members in buckets.values():
        if len(members) > 1:
            arr = np.asarray(members)
            adj[np.ix_(arr, arr)] = True
    np.fill_diagonal(adj, False)
    return adj


def adjacency_pairwise(graph: GrassmannGraph, chunk: int = 1 << 15) -> np.ndarray:
    """Adjacency by direct rank tests on all stacked pairs (oracle route)."""
    v = graph.num_vertices
    k = graph.index.k
    bases = graph.vertex_bases()
    adj = np.zeros((v, v), dtype=bool)
    for i in range(v):
        js = np.arange(i + 1, v)
        for s in range(0, js.size, chunk):
            jblock = js[s : s + chunk]
            stacked = np.concatenate(
                (np.broadcast_to(bases[i], (jblock.size, k, graph.index.n)), bases[jblock]),
                axis=1,
            )
            ranks = bulk.batched_rank(graph.index.ctx, stacked)
            hit = jblock[ranks == k + 1]
            adj[i, hit] = True
            adj[hit, i] = True
    return adj


# -- distances ----------------------------------------------------------------------

def _bool_matmul(reach: np.ndarray, adj_f: np.ndarray, block: int = 2048) -> np.ndarray:
    """reach @ adj > 0 on bool inputs, row-chunked through float32 BLAS."""
    v = reach.shape[0]
    out = np.empty((v, v), dtype=bool)
    for i in range(0, v, block):
        rb = reach[i : i + block].astype(np.float32)
        out[i : i + block] = (rb @ adj_f) > 0.5
    return out


def all_pairs_distances(graph: GrassmannGraph, max_pairs: int = ALL_PAIRS_CAP) -> np.ndarray:
    """Exact BFS distance between every vertex pair; -1 marks unreachable.

    Runs breadth-first search from all sources simultaneously: the
    reachability matrix is expanded one level per step, which is the
    same frontier expansion every per-source BFS would do.  The result
    is cached on the graph.
    """
    v = graph.num_vertices
    if v * (v - 1) // 2 > max_pairs:
        raise AllPairsTooLargeError(
            f"{v} vertices give {v * (v - 1) // 2} pairs > cap {max_pairs}"
        )
    if graph._all_pairs is not None:
        return graph._all_pairs
    dist = np.full((v, v), -1, dtype=np.int16)
    if v == 0:
        return dist
    np.fill_diagonal(dist, 0)
    if v > 1:
        adj = graph.adjacency()
        dist[adj] = 1
        if not _is_complete_case(graph.index.n, graph.index.k):
            reach = adj | np.eye(v, dtype=bool)
            adj_f = adj.astype(np.float32)
            level = 1
            while not reach.all():
                new = _bool_matmul(reach, adj_f) | reach
                gained = new & ~reach
                if not gained.any():
                    break
                level += 1
                dist[gained] = level
                reach = new
                if level > v:  # pragma: no cover
                    raise InternalInvariantError("BFS failed to converge")
    graph._all_pairs = dist
    return dist


def neighbors(graph: GrassmannGraph, pos: int) -> list[int]:
    """Graph positions adjacent to the vertex at `pos`, generated
    algebraically: for each hyperplane h of the vertex, every lift of a
    quotient line through h is a candidate k-space adjacent in the full
    graph; candidates are filtered to the graph's vertex set.  Needs no
    edge storage, so it scales past the dense-adjacency cap."""
    if not 0 <= pos < graph.num_vertices:
        raise VertexAbsentError(f"position {pos} out of range")
    sub = graph.subspace_at(pos)
    index = graph.index
    ctx, n, k = index.ctx, index.n, index.k
    if k == 0:
        return []
    full = Subspace.full(ctx, n)
    ids = graph.vertex_ids
    out = []
    for h in hyperplanes_containing(sub, Subspace.zero(ctx, n)):
        complement_rows = complement_basis(h, full)
        for lam in projective_reps(ctx, len(complement_rows)):
            vtx = [0] * n
            for li, b in zip(lam, complement_rows):
                if li:
                    vtx = [ctx.add(a, ctx.mul(li, c)) for a, c in zip(vtx, b)]
            cand = Subspace.from_vectors(ctx, n, list(h.basis.rows) + [vtx])
            if cand == sub:
                continue
            try:
                gid = index.index_of(cand)
            except VertexAbsentError:  # pragma: no cover - index is complete
                continue
            p = int(np.searchsorted(ids, gid))
            if p < len(ids) and ids[p] == gid:
                out.append(p)
    return sorted(set(out))


def bfs_distances(graph: GrassmannGraph, source, dense_cap: int = 1 << 13) -> np.ndarray:
    """Single-source BFS distances (float array, inf for unreachable).

    source may be a graph position (int) or a Subspace/LinearCode.  Up to
    dense_cap vertices the cached adjacency matrix drives the frontier
    expansion; above it neighbors are generated on demand and no edge
    storage is kept.
    """
    if isinstance(source, (int, np.integer)):
        src = int(source)
        if not 0 <= src < graph.num_vertices:
            raise VertexAbsentError(f"position {src} out of range")
    else:
        src = graph.position_of(source)
    v = graph.num_vertices
    dist = np.full(v, inf)
    dist[src] = 0
    if v > dense_cap and not _is_complete_case(graph.index.n, graph.index.k):
        from collections import deque

        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in neighbors(graph, u):
                if dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist
    adj = graph.adjacency()
    frontier = np.zeros(v, dtype=bool)
    frontier[src] = True
    level = 0
    while frontier.any():
        nxt = adj[frontier].any(axis=0) & np.isinf(dist)
        level += 1
        dist[nxt] = level
        frontier = nxt
    return dist


def metric_distance_matrix(graph: GrassmannGraph, max_pairs: int = ALL_PAIRS_CAP) -> np.ndarray:
    """The matrix of k - dim(x ∩ y) over the graph's vertex set.

    For min(k, n-k) <= 2 this is forced by adjacency alone: distinct
    non-adjacent spaces have dim(x ∩ y) <= k-2 and >= k - min(k, n-k),
    which pin it exactly.  Otherwise every pair's stacked rank is
    computed outright (chunked).
    """
    v = graph.num_vertices
    n, k = graph.index.n, graph.index.k
    if v * (v - 1) // 2 > max_pairs:
        raise AllPairsTooLargeError(
            f"{v} vertices give {v * (v - 1) // 2} pairs > cap {max_pairs}"
        )
    if min(k, n - k) <= 2:
        dist = np.full((v, v), min(k, n - k), dtype=np.int16)
        if v:
            adj = graph.adjacency()
            dist[adj] = 1
            np.fill_diagonal(dist, 0)
        return dist
    bases = graph.vertex_bases()
    ctx = graph.index.ctx
    dist = np.zeros((v, v), dtype=np.int16)
    chunk = 1 << 15
    for i in range(v):
        js = np.arange(i + 1, v)
        for s in range(0, js.size, chunk):
            jblock = js[s : s + chunk]
            stacked = np.concatenate(
                (np.broadcast_to(bases[i], (jblock.size, k, n)), bases[jblock]), axis=1
            )
            ranks = bulk.batched_rank(ctx, stacked)
            dist[i, jblock] = ranks - k
            dist[jblock, i] = ranks - k
    return dist


# -- verification summaries -----------------------------------------------------------

@dataclass
class GraphSummary:
    connected: bool
    diameter: object  # int, math.inf (disconnected), or None (empty graph)
    component_count: int
    component_sizes: list[int] = field(default_factory=list)
    component_diameters: list[int] = field(default_factory=list)


def diameter_and_connectivity(
    graph: GrassmannGraph, max_pairs: int = ALL_PAIRS_CAP
) -> GraphSummary:
    """Connectivity, diameter and per-component stats from all-sources BFS.

    In full mode the classical diameter formula min(k, n-k) is re-checked
    and a failure raises, since it would mean the engine itself is broken.
    """
    v = graph.num_vertices
    if v == 0:
        return GraphSummary(True, None, 0)
    dist = all_pairs_distances(graph, max_pairs=max_pairs)
    labels = np.full(v, -1, dtype=np.int64)
    comp = 0
    for i in range(v):
        if labels[i] == -1:
            members = dist[i] >= 0
            labels[members] = comp
            comp += 1
    sizes = [int((labels == c).sum()) for c in range(comp)]
    diams = []
    for c in range(comp):
        members = np.nonzero(labels == c)[0]
        diams.append(int(dist[np.ix_(members, members)].max()))
    connected = comp == 1
    diameter = diams[0] if connected else inf
    if graph.mode == "full":
        expected = min(graph.index.k, graph.index.n - graph.index.k)
        if not connected or diameter != expected:
            raise InternalInvariantError(
                f"full-graph diameter {diameter} != min(k, n-k) = {expected}"
            )
    return GraphSummary(connected, diameter, comp, sizes, diams)


@dataclass
class IsometryReport:
    isometric: bool
    witnesses: list
    checked_pairs: int


def isometry_check(
    graph: GrassmannGraph, max_pairs: int = ALL_PAIRS_CAP, witness_cap: int = 100
) -> IsometryReport:
    """Compare BFS distance inside the induced subgraph with k - dim(x ∩ y).

    Witnesses list up to witness_cap violating pairs as
    (position_i, position_j, subgraph_distance, metric_distance), with
    inf standing for pairs in different components.
    """
    if graph.mode != "induced":
        raise BadTError("isometry check applies to the induced subgraph")
    v = graph.num_vertices
    if v <= 1:
        return IsometryReport(True, [], 0)
    d_sub = all_pairs_distances(graph, max_pairs=max_pairs)
    d_metric = metric_distance_matrix(graph, max_pairs=max_pairs)
    mismatch = d_sub != d_metric
    iu = np.triu_indices(v, k=1)
    bad = mismatch[iu]
    witnesses = []
    if bad.any():
        where = np.nonzero(bad)[0][:witness_cap]
        for w in where:
            i, j = int(iu[0][w]), int(iu[1][w])
            ds = int(d_sub[i, j])
            witnesses.append((i, j, inf if ds < 0 else ds, int(d_metric[i, j])))
    return IsometryReport(not bad.any(), witnesses, int(bad.size))
