"""Constructive schedules: paths, grids (diagonal strips / narrow border),
and random geometric graphs (cell tessellation), plus closed-form bounds.

Every schedule built here is passed back through the engine, and the
reported round counts are engine measurements, not formula outputs.
"""

import math
from dataclasses import dataclass

import numpy as np

from .engine import (BurnSchedule, PERMISSIVE, covered_by_balls,
                     repair_schedule, simulate)
from .generators import PointSet, gen_structured
from .graph import Graph


@dataclass(frozen=True, eq=False)
class GridPlan:
    m: int
    n: int
    gamma: float
    k1: int          # smallest strip radius (0 for the narrow strategy)
    k2: int          # largest strip radius (0 for the narrow strategy)
    C: float
    schedule: BurnSchedule
    achieved_rounds: int


@dataclass(frozen=True, eq=False)
class CellPlan:
    a: float
    cells: np.ndarray        # per-cell point counts, row-major
    ignitions: tuple         # one vertex per nonempty cell, ignition order
    schedule: BurnSchedule
    achieved_rounds: object  # int, or INCOMPLETE


@dataclass(frozen=True)
class RggBound:
    r: float
    C0: float
    t: int


def _ceil_sqrt(n: int) -> int:
    return math.isqrt(n - 1) + 1 if n > 0 else 0


def path_schedule(n: int) -> BurnSchedule:
    """Length-exactly-ceil(sqrt(n)) schedule tiling the path left to right.

    The k balls of radii k-1..0 cover k^2 >= n vertices; the surplus hangs
    off the left end, and whatever remains overlaps balls 1 and 2.  The
    sole non-strict case is n=2, where round-2 spread always beats the
    second ignition.
    """
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    if n == 1:
        return BurnSchedule((0,))
    if n == 2:
        return BurnSchedule((0, 1), PERMISSIVE)
    k = _ceil_sqrt(n)
    slack = k * k - n
    hang = min(slack, k - 1)
    overlap = min(slack - hang, 2 * (k - 2))
    centers = [k - 1 - hang]
    centers.append(centers[0] + 2 * k - 2 - overlap)
    for i in range(3, k + 1):
        r_prev, r_cur = k - i + 1, k - i
        centers.append(centers[-1] + r_prev + r_cur + 1)
    sched = BurnSchedule(tuple(centers))
    g = gen_structured("path", 1, n)
    tr = simulate(g, sched)
    if tr.completion_round != k:
        raise AssertionError(f"path schedule for n={n} finished at "
                             f"{tr.completion_round}, wanted {k}")
    return sched


def _mark_l1(cov: np.ndarray, r0: int, c0: int, rad: int) -> int:
    """Mark the L1 ball on an m x n bitmap; returns newly covered count."""
    m, n = cov.shape
    newly = 0
    for rr in range(max(0, r0 - rad), min(m - 1, r0 + rad) + 1):
        rem = rad - abs(rr - r0)
        lo, hi = max(0, c0 - rem), min(n - 1, c0 + rem) + 1
        seg = cov[rr, lo:hi]
        newly += int(seg.size - seg.sum())
        seg[:] = True
    return newly


def _strip_balls(m: int, n: int, k1: int) -> list:
    """Diagonal-strip ball placement; returns [(row, col, radius), ...].

    Ball radii increase by one per ball across the whole construction.
    Strips run parallel to the main diagonal.  Phase one chains strips
    along the top border right to left; once the top border is covered,
    phase two walks the left border downward.
    """
    balls = []
    rad = k1

    def lay_strip(r0, c0):
        nonlocal rad
        while True:
            balls.append((r0, c0, rad))
            nr, nc = r0 + rad, c0 + rad
            rad += 1
            if nr >= m or nc >= n:
                return
            r0, c0 = nr, nc

    first_col, first_rad = n - 1, rad
    while True:
        lay_strip(0, first_col)
        left_edge = first_col - first_rad
        if left_edge <= 0:
            break
        first_col = max(0, left_edge - 1 - rad)
        first_rad = rad
    # the last top-border strip reached column 0, so its first ball covers
    # left-border rows up to first_rad - first_col
    t = first_rad - first_col + 1
    while t <= m - 1:
        row = min(t + rad, m - 1)
        t = row + rad + 1
        lay_strip(row, 0)
    return balls


def grid_lower_bound(m: int, n: int) -> int:
    """max of the ball-volume bound (f(k) = (2k^3+k)/3 must reach mn) and
    the border-path projection ceil(sqrt(max side))."""
    if m < 1 or n < 1:
        raise ValueError("grid dimensions must be >= 1")
    m, n = min(m, n), max(m, n)
    total = m * n
    k = 1
    while (2 * (k + 1) ** 3 + (k + 1)) // 3 < total:
        k += 1
    # k is now the largest with f(k) < mn  (f(1) = 1 < mn except 1x1)
    if (2 * k ** 3 + k) // 3 >= total:
        k = 0
    return max(k + 1, _ceil_sqrt(n))


def grid_narrow_schedule(m: int, n: int) -> GridPlan:
    """Fires spaced ceil(sqrt(n)) apart along the top border row."""
    if m < 1 or n < 1:
        raise ValueError("grid dimensions must be >= 1")
    s = _ceil_sqrt(n)
    if m > s:
        raise ValueError(f"narrow strategy needs m <= ceil(sqrt(n)) = {s}, "
                         f"got m = {m}")
    sources = tuple(range(0, n, s))  # row 0, so vertex id = column
    sched = BurnSchedule(sources)
    g = gen_structured("grid", m, n)
    tr = simulate(g, sched)
    if tr.completion_round is None or tr.completion_round > 3 * s:
        raise AssertionError(f"narrow schedule missed its 3*ceil(sqrt(n)) "
                             f"budget on {m}x{n}: {tr.completion_round}")
    return GridPlan(m, n, m / math.sqrt(n), 0, 0, 0.0, sched,
                    tr.completion_round)


def grid_strip_schedule(m: int, n: int, C: float = 1.0) -> GridPlan:
    """Diagonal-strip covering of the m x n grid.

    Dimensions are normalized to m <= n.  Grids with m <= ceil(sqrt(n))
    use the narrow border strategy instead.  The strip radii start at
    ceil((mn)^(1/3) / gamma^(1/6)); a greedy bitmap repair with the unused
    small radii patches any rounding gaps before engine verification.
    """
    if m < 1 or n < 1:
        raise ValueError("grid dimensions must be >= 1")
    m, n = min(m, n), max(m, n)
    if m <= _ceil_sqrt(n):
        return grid_narrow_schedule(m, n)
    gamma = m / math.sqrt(n)
    k1 = math.ceil((m * n) ** (1 / 3) / gamma ** (1 / 6))
    balls = _strip_balls(m, n, k1)
    k2 = balls[-1][2]
    cov = np.zeros((m, n), dtype=bool)
    for r0, c0, rad in balls:
        _mark_l1(cov, r0, c0, rad)
    extra = 0
    while True:
        work = cov.copy()
        free = list(range(k2 + extra, k2, -1)) + list(range(k1 - 1, -1, -1))
        patch = []
        for rho in free:
            flat = int(np.argmax(~work))
            if work.flat[flat]:
                break
            r0, c0 = divmod(flat, n)
            ctr = (min(r0 + rho // 2, m - 1), min(c0 + rho // 2, n - 1))
            _mark_l1(work, ctr[0], ctr[1], rho)
            patch.append((ctr[0], ctr[1], rho))
        if bool(work.all()):
            break
        extra += 1  # one bonus oversized ball; not expected in practice
    rounds = k2 + 1 + extra
    ordered = sorted(balls + patch, key=lambda b: -b[2])
    sources = [r0 * n + c0 for r0, c0, _ in ordered]
    g = gen_structured("grid", m, n)
    if not covered_by_balls(g, sources, rounds):
        raise AssertionError(f"strip covering failed on {m}x{n}")
    sched = repair_schedule(g, sources)
    tr = simulate(g, sched)
    return GridPlan(m, n, gamma, k1, k2, float(C), sched,
                    tr.completion_round)


def rgg_lower_bound(r: float, C0: float = 400.0) -> RggBound:
    """Statistical certificate: asymptotically almost surely, burning a
    geometric graph at radius r needs more than t rounds."""
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r}")
    t = int((2.0 / (C0 * math.pi * r * r)) ** (1 / 3))
    return RggBound(r, C0, t)


def rgg_cell_schedule(g: Graph, pts: PointSet, a: float = 0.5) -> CellPlan:
    """One ignition per nonempty tessellation cell, then pure spreading.

    Cells have side a * r^(1/3); the rightmost column and bottom row
    absorb the remainder.  In each nonempty cell the vertex nearest the
    cell center burns, cells taken in row-major order.
    """
    if pts.n == 0:
        raise ValueError("empty point set")
    if g.n != pts.n:
        raise ValueError(f"graph has {g.n} vertices but point set has {pts.n}")
    side = a * pts.r ** (1 / 3)
    if side > 1.0:
        raise ValueError(f"cell side {side:.3f} exceeds the unit square")
    ncell = max(1, int(1.0 / side))
    xs, ys = pts.points[:, 0], pts.points[:, 1]
    col = np.minimum((xs / side).astype(np.int64), ncell - 1)
    row = np.minimum((ys / side).astype(np.int64), ncell - 1)
    counts = np.zeros((ncell, ncell), dtype=np.int64)
    np.add.at(counts, (row, col), 1)
    ignitions = []
    key = row * ncell + col
    order = np.argsort(key, kind="stable")
    bounds = np.searchsorted(key[order], np.arange(ncell * ncell))
    bounds = np.append(bounds, pts.n)
    for cell in range(ncell * ncell):
        members = order[bounds[cell]:bounds[cell + 1]]
        if members.size == 0:
            continue
        i, j = divmod(cell, ncell)
        cx = (j * side + (1.0 if j == ncell - 1 else (j + 1) * side)) / 2
        cy = (i * side + (1.0 if i == ncell - 1 else (i + 1) * side)) / 2
        d2 = (xs[members] - cx) ** 2 + (ys[members] - cy) ** 2
        ignitions.append(int(members[int(np.argmin(d2))]))
    sched = BurnSchedule(tuple(ignitions), PERMISSIVE)
    tr = simulate(g, sched)
    return CellPlan(a, counts, tuple(ignitions), sched, tr.completion_round)
