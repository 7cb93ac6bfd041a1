"""Seeded graph generators: binomial random graphs, random geometric graphs
on the unit square, and structured families (path, grid, torus).

All randomness flows through the counter-based generator in ``rng``; a
sample is a pure function of its arguments and seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .graph import Graph, build_graph


@dataclass(frozen=True)
class PointSet:
    points: np.ndarray = field(repr=False)  # (n, 2) float64 in [0,1]^2
    r: float = 0.0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must be an (n, 2) array")
        if pts.size and (pts.min() < 0.0 or pts.max() > 1.0):
            raise ValueError("coordinates must lie in [0,1]")
        if self.r < 0:
            raise ValueError("radius must be >= 0")
        object.__setattr__(self, "points", pts)
        pts.flags.writeable = False

    @property
    def n(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class GnpSample:
    graph: Graph
    n: int
    p: float
    seed: int

    @property
    def d(self) -> float:
        return self.p * (self.n - 1)


def _pair_offset(u: int, n: int) -> int:
    # lexicographic rank of pair (u, u+1) among all pairs (a, b), a < b
    return u * (n - 1) - u * (u - 1) // 2


def _decode_pairs(t: np.ndarray, n: int) -> tuple:
    """Invert the lexicographic pair rank: t -> (u, v), u < v."""
    tt = t.astype(np.float64)
    a = 2 * n - 1
    u = np.floor((a - np.sqrt(a * a - 8.0 * tt)) / 2.0).astype(np.int64)
    # float sqrt can land one off; nudge to the rank bracket
    for _ in range(2):
        off = u * (n - 1) - u * (u - 1) // 2
        u = np.where(off > t, u - 1, u)
        off_next = (u + 1) * (n - 1) - (u + 1) * u // 2
        u = np.where(t >= off_next, u + 1, u)
    off = u * (n - 1) - u * (u - 1) // 2
    v = u + 1 + (t - off)
    return u, v


def _gnp_pairwise(n: int, p: float, seed: int) -> np.ndarray:
    rows = []
    for u in range(n - 1):
        cnt = n - 1 - u
        hit = rng.u01_block(seed, _pair_offset(u, n), cnt) < p
        cols = np.flatnonzero(hit)
        if cols.size:
            rows.append(np.column_stack([np.full(cols.size, u, dtype=np.int64), u + 1 + cols]))
    if not rows:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(rows)


def _gnp_skip(n: int, p: float, seed: int) -> np.ndarray:
    """Geometric skipping over the lexicographic pair order.

    Draw i has gap floor(log(1-U_i)/log(1-p)); the positions hit are the
    edges.  Equals the per-pair Bernoulli distribution for 0 < p < 1.
    """
    total = n * (n - 1) // 2
    lq = math.log1p(-p)
    taken = []
    pos = 0
    counter = 0
    block = max(1024, int(total * p * 1.25) + 16)
    while pos < total:
        u = rng.u01_block(seed, counter, block)
        counter += block
        gaps = np.floor(np.log1p(-u) / lq).astype(np.int64)
        hits = pos + np.cumsum(gaps + 1) - 1
        good = hits[hits < total]
        taken.append(good)
        if good.size < hits.size:
            break
        pos = int(hits[-1]) + 1
    ranks = np.concatenate(taken) if taken else np.zeros(0, dtype=np.int64)
    u, v = _decode_pairs(ranks, n)
    return np.column_stack([u, v])


def gen_gnp(n: int, p: float, seed: int, method: str = "pairwise",
            complement: bool = False) -> GnpSample:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0,1], got {p}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if method not in ("pairwise", "skip"):
        raise ValueError(f"unknown method {method!r}")
    q = 1.0 - p if complement else p
    if q <= 0.0:
        pairs = np.zeros((0, 2), dtype=np.int64)
    elif q >= 1.0:
        u, v = np.triu_indices(n, k=1)
        pairs = np.column_stack([u, v]).astype(np.int64)
    elif method == "skip":
        pairs = _gnp_skip(n, q, seed)
    else:
        pairs = _gnp_pairwise(n, q, seed)
    if complement:
        u, v = np.triu_indices(n, k=1)
        allkey = u.astype(np.int64) * n + v
        key = pairs[:, 0] * n + pairs[:, 1]
        keep = allkey[~np.isin(allkey, key)]
        pairs = np.column_stack([keep // n, keep % n])
    return GnpSample(build_graph(n, pairs), n, p, seed)


def critical_radius(n: int) -> float:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return math.sqrt(math.log(n) / (math.pi * n))


def _rgg_edges(points: np.ndarray, r: float) -> np.ndarray:
    """All pairs at Euclidean distance <= r via a bucket grid.

    Cell side >= r, so any qualifying pair sits in the same or an adjacent
    cell; output matches the all-pairs check exactly.
    """
    n = points.shape[0]
    if n < 2 or r <= 0.0:
        return np.zeros((0, 2), dtype=np.int64)
    ncell = max(1, int(1.0 / r)) if r < 1.0 else 1
    while ncell > 1 and 1.0 / ncell < r:  # guard against float rounding up
        ncell -= 1
    ix = np.minimum((points[:, 0] * ncell).astype(np.int64), ncell - 1)
    iy = np.minimum((points[:, 1] * ncell).astype(np.int64), ncell - 1)
    cell = ix * ncell + iy
    order = np.argsort(cell, kind="stable")
    sorted_cell = cell[order]
    # slice boundaries per occupied cell
    bounds = np.flatnonzero(np.diff(sorted_cell)) + 1
    starts = np.concatenate([[0], bounds])
    ends = np.concatenate([bounds, [n]])
    cell_ids = sorted_cell[starts]
    slot = {int(c): i for i, c in enumerate(cell_ids)}
    r2 = r * r
    out = []

    def pair_block(ids_a, ids_b, same):
        pa = points[ids_a]
        pb = points[ids_b]
        dx = pa[:, 0, None] - pb[None, :, 0]
        dy = pa[:, 1, None] - pb[None, :, 1]
        mask = dx * dx + dy * dy <= r2
        if same:
            mask &= ids_a[:, None] < ids_b[None, :]
        ai, bi = np.nonzero(mask)
        if ai.size:
            out.append(np.column_stack([ids_a[ai], ids_b[bi]]))

    for i in range(cell_ids.size):
        c = int(cell_ids[i])
        cx, cy = divmod(c, ncell)
        ids_a = order[starts[i] : ends[i]]
        pair_block(ids_a, ids_a, True)
        # forward neighbor cells only, so each cell pair is visited once
        for dx_, dy_ in ((0, 1), (1, -1), (1, 0), (1, 1)):
            nx, ny = cx + dx_, cy + dy_
            if not (0 <= nx < ncell and 0 <= ny < ncell):
                continue
            j = slot.get(nx * ncell + ny)
            if j is None:
                continue
            pair_block(ids_a, order[starts[j] : ends[j]], False)
    if not out:
        return np.zeros((0, 2), dtype=np.int64)
    pairs = np.concatenate(out)
    lo = pairs.min(axis=1)
    hi = pairs.max(axis=1)
    return np.column_stack([lo, hi])


def gen_rgg(n: int, r: float, seed: int) -> tuple:
    """Returns (Graph, PointSet); edge iff Euclidean distance <= r."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    flat = rng.u01_block(seed, 0, 2 * n)
    points = flat.reshape(n, 2).copy()
    edges = _rgg_edges(points, r)
    return build_graph(n, edges), PointSet(points, r)


def gen_structured(kind: str, m: int, n: int) -> Graph:
    if kind == "path":
        if n < 1:
            raise ValueError(f"path needs n >= 1, got {n}")
        return build_graph(n, np.column_stack([np.arange(n - 1), np.arange(1, n)]))
    if kind == "grid":
        if m < 1 or n < 1:
            raise ValueError(f"grid needs m, n >= 1, got ({m}, {n})")
        return build_graph(m * n, _grid_edges(m, n, wrap=False))
    if kind == "torus":
        if m < 3 or n < 3:
            raise ValueError(f"torus needs m, n >= 3, got ({m}, {n})")
        return build_graph(m * n, _grid_edges(m, n, wrap=True))
    raise ValueError(f"unknown kind {kind!r}; expected path|grid|torus")


def _grid_edges(m: int, n: int, wrap: bool) -> np.ndarray:
    ids = np.arange(m * n, dtype=np.int64).reshape(m, n)
    blocks = []
    if n > 1:
        blocks.append(np.column_stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()]))
    if m > 1:
        blocks.append(np.column_stack([ids[:-1, :].ravel(), ids[1:, :].ravel()]))
    if wrap:
        if n > 2:
            blocks.append(np.column_stack([ids[:, -1], ids[:, 0]]))
        if m > 2:
            blocks.append(np.column_stack([ids[-1, :], ids[0, :]]))
    if not blocks:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(blocks)


def write_points(pts: PointSet, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{pts.n} {pts.r:.17g}\n")
        for x, y in pts.points:
            fh.write(f"{x:.17g} {y:.17g}\n")


def read_points(path) -> PointSet:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("points file must start with a 'n r' line")
        n = int(header[0])
        r = float(header[1])
        rows = [line.split() for line in fh if line.split()]
    if len(rows) != n:
        raise ValueError(f"points file declares {n} points but has {len(rows)}")
    pts = np.array([[float(a), float(b)] for a, b in rows], dtype=np.float64)
    if n == 0:
        pts = pts.reshape(0, 2)
    return PointSet(pts, r)
