"""Immutable undirected graphs with BFS-based distance queries.

Vertices are dense integer ids 0..n-1. Adjacency is stored in compressed
sparse row form (``indptr``/``indices``) with each neighbor list strictly
sorted, which keeps memory flat for the large geometric instances and lets
BFS work on whole frontiers with numpy gathers instead of per-vertex loops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Distance sentinel inside integer arrays.  Serialized as "inf" at the edges
# of the system; never leaks as a magic number into output files.
UNREACHABLE = -1
# Eccentricity/diameter of a disconnected graph.
INFINITE = math.inf


class Graph:
    """Undirected simple graph over vertex ids 0..n-1 (CSR adjacency)."""

    __slots__ = ("n", "m", "indptr", "indices", "_adj")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray, m: int):
        self.n = n
        self.m = m
        self.indptr = indptr
        self.indices = indices
        self._adj = None
        indptr.flags.writeable = False
        indices.flags.writeable = False

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def adjacency_lists(self) -> list:
        """Plain list-of-lists view, built lazily; meant for small graphs."""
        if self._adj is None:
            ind = self.indices.tolist()
            ptr = self.indptr.tolist()
            self._adj = [ind[ptr[v] : ptr[v + 1]] for v in range(self.n)]
        return self._adj

    def edges(self) -> np.ndarray:
        """(m, 2) array of edges with u < v, lexicographically sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        dst = self.indices.astype(np.int64)
        keep = src < dst
        return np.column_stack([src[keep], dst[keep]])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DistanceMap:
    """BFS hop counts from ``source``; UNREACHABLE (-1) marks other components."""

    source: int
    dist: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.dist.flags.writeable = False

    def reachable(self) -> int:
        return int(np.count_nonzero(self.dist != UNREACHABLE))


def build_graph(n: int, edges) -> Graph:
    if n < 1:
        raise ValueError(f"graph needs at least one vertex, got n={n}")
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be pairs of vertex ids")
    m = arr.shape[0]
    if m:
        if arr.min() < 0 or arr.max() >= n:
            bad = arr[(arr.min(axis=1) < 0) | (arr.max(axis=1) >= n)][0]
            raise ValueError(f"edge ({bad[0]}, {bad[1]}) out of range for n={n}")
        if (arr[:, 0] == arr[:, 1]).any():
            v = arr[arr[:, 0] == arr[:, 1]][0, 0]
            raise ValueError(f"self-loop at vertex {v}")
        lo = arr.min(axis=1)
        hi = arr.max(axis=1)
        key = lo * n + hi
        uniq, counts = np.unique(key, return_counts=True)
        if (counts > 1).any():
            k = int(uniq[counts > 1][0])
            raise ValueError(f"duplicate edge ({k // n}, {k % n})")
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src = src[order]
        dst = dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        indices = dst.astype(np.int32)
    else:
        indptr = np.zeros(n + 1, dtype=np.int64)
        indices = np.zeros(0, dtype=np.int32)
    return Graph(n, indptr, indices, m)


def _gather(g: Graph, frontier: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of every frontier vertex."""
    starts = g.indptr[frontier]
    counts = g.indptr[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=g.indices.dtype)
    prefix = np.cumsum(counts) - counts
    flat = np.repeat(starts - prefix, counts) + np.arange(total, dtype=np.int64)
    return g.indices[flat]


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex id {v} out of range for n={g.n}")


def bfs_distances(g: Graph, v: int) -> DistanceMap:
    _check_vertex(g, v)
    dist = np.full(g.n, UNREACHABLE, dtype=np.int32)
    dist[v] = 0
    frontier = np.array([v], dtype=np.int64)
    level = 0
    while frontier.size:
        nbrs = _gather(g, frontier)
        nbrs = nbrs[dist[nbrs] == UNREACHABLE]
        if nbrs.size == 0:
            break
        level += 1
        dist[nbrs] = level
        # duplicates collapse here; flatnonzero returns sorted unique ids
        frontier = np.flatnonzero(dist == level)
    return DistanceMap(v, dist)


def mark_ball(g: Graph, v: int, r: int, out: np.ndarray) -> int:
    """Set out[u] = True for every u within distance r of v; returns #newly set.

    ``out`` accumulates across calls, which is how ball unions are formed
    without materializing per-center sets.
    """
    _check_vertex(g, v)
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    # the ball needs its own visited set: expansion must pass through
    # vertices that earlier balls already marked in ``out``
    visited = np.zeros(g.n, dtype=bool)
    visited[v] = True
    newly = 0
    if not out[v]:
        out[v] = True
        newly += 1
    frontier = np.array([v], dtype=np.int64)
    for _ in range(r):
        nbrs = _gather(g, frontier)
        nbrs = nbrs[~visited[nbrs]]
        if nbrs.size == 0:
            break
        visited[nbrs] = True
        frontier = np.unique(nbrs)
        newly += int((~out[frontier]).sum())
        out[frontier] = True
    return newly


def _ball_mask(g: Graph, v: int, r: int) -> np.ndarray:
    out = np.zeros(g.n, dtype=bool)
    mark_ball(g, v, r, out)
    return out


def ball(g: Graph, v: int, r: int) -> frozenset:
    return frozenset(np.flatnonzero(_ball_mask(g, v, r)).tolist())


def ball_size(g: Graph, v: int, r: int) -> int:
    return int(np.count_nonzero(_ball_mask(g, v, r)))


def sphere(g: Graph, v: int, r: int) -> frozenset:
    _check_vertex(g, v)
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    dm = bfs_distances(g, v)
    return frozenset(np.flatnonzero(dm.dist == r).tolist())


def eccentricity(g: Graph, v: int):
    dm = bfs_distances(g, v)
    if (dm.dist == UNREACHABLE).any():
        return INFINITE
    return int(dm.dist.max())


def diameter(g: Graph):
    # One reachability probe settles the disconnected case without n BFS runs.
    if bfs_distances(g, 0).reachable() < g.n:
        return INFINITE
    best = 0
    for v in range(g.n):
        e = int(bfs_distances(g, v).dist.max())
        if e > best:
            best = e
    return best


def components(g: Graph) -> list:
    """Connected components as frozensets, ordered by smallest member."""
    seen = np.zeros(g.n, dtype=bool)
    out = []
    for v in range(g.n):
        if seen[v]:
            continue
        dm = bfs_distances(g, v)
        members = np.flatnonzero(dm.dist != UNREACHABLE)
        seen[members] = True
        out.append(frozenset(members.tolist()))
    return out


def largest_component(g: Graph) -> np.ndarray:
    """Sorted vertex ids of the largest component (ties: smallest member)."""
    best = None
    seen = np.zeros(g.n, dtype=bool)
    for v in range(g.n):
        if seen[v]:
            continue
        members = np.flatnonzero(bfs_distances(g, v).dist != UNREACHABLE)
        seen[members] = True
        if best is None or members.size > best.size:
            best = members
    return best


def induced_subgraph(g: Graph, vertices) -> tuple:
    """Subgraph on the given vertices; returns (subgraph, original_ids).

    New ids follow the sorted order of ``original_ids`` (new id i is
    original_ids[i]).
    """
    verts = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if verts.size == 0:
        raise ValueError("induced subgraph needs at least one vertex")
    if verts[0] < 0 or verts[-1] >= g.n:
        raise ValueError("vertex id out of range")
    newid = np.full(g.n, -1, dtype=np.int64)
    newid[verts] = np.arange(verts.size)
    counts = g.indptr[verts + 1] - g.indptr[verts]
    srcs = np.repeat(verts, counts)
    dsts = _gather(g, verts).astype(np.int64)
    keep = (newid[dsts] >= 0) & (srcs < dsts)
    pairs = np.column_stack([newid[srcs[keep]], newid[dsts[keep]]])
    return build_graph(int(verts.size), pairs), verts


def write_edge_file(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def read_edge_file(path) -> Graph:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("edge file must start with a 'n m' line")
        n, m = int(header[0]), int(header[1])
        edges = []
        for line in fh:
            tok = line.split()
            if not tok:
                continue
            if len(tok) != 2:
                raise ValueError(f"bad edge line: {line.rstrip()}")
            edges.append((int(tok[0]), int(tok[1])))
    if len(edges) != m:
        raise ValueError(f"edge file declares {m} edges but has {len(edges)}")
    return build_graph(n, edges)
