"""Monte-Carlo burning with random source selection.

Three selection rules, all with SPREAD-then-SELECT round order:

* ``UNIFORM_ALL``: each round picks uniformly from every vertex; picking
  an already-burned vertex wastes the round's selection.
* ``UNIFORM_UNSELECTED``: picks uniformly from vertices never picked
  before; once all have been picked, selection stops and the fire
  spreads on its own.
* ``UNIFORM_UNBURNED``: picks uniformly from the currently unburned
  vertices, so every selection makes progress.

A trial returns the first round at whose end everything is burned.
``path_drunk_trial_fast`` reproduces ``drunk_trial`` on a path exactly
(same seed, same result) without building the graph, tracking burned
territory as intervals around the sources.
"""

from __future__ import annotations

import bisect
import heapq
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from .graph import Graph, _gather
from .rng import Splitmix64, mix
from .solver import burning_number_exact

__all__ = [
    "DrunkVariant",
    "STALLED",
    "TrialStats",
    "drunk_trial",
    "path_drunk_trial_fast",
    "drunk_estimate",
    "cost_of_drunkenness",
]

FULL_SAMPLE_CAP = 100_000
RESERVOIR_SIZE = 10_000

# solver budget for attaching an exact reference to arbitrary graphs
_B_REFERENCE_MAX_N = 20


class DrunkVariant(Enum):
    UNIFORM_ALL = 1
    UNIFORM_UNSELECTED = 2
    UNIFORM_UNBURNED = 3


class _Stalled:
    """Outcome of a trial that never finished (disconnected input)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "STALLED"


STALLED = _Stalled()


def _stall_cap(n: int) -> int:
    # UNIFORM_ALL on a connected graph finishes within n rounds; only a
    # component that never receives a source can push past this
    return max(1000, 200 * n)


def drunk_trial(g: Graph, variant: DrunkVariant, seed: int):
    """One random-ignition burn of ``g``; returns the round count.

    Returns STALLED instead of a count when the selection rule keeps
    missing an unburned component (possible only for UNIFORM_ALL on a
    disconnected graph).
    """
    if not isinstance(variant, DrunkVariant):
        raise TypeError(f"expected DrunkVariant, got {variant!r}")
    rng = Splitmix64(seed)
    n = g.n
    burned = np.zeros(n, dtype=bool)
    burned_count = 0
    frontier: list[int] = []

    if variant is DrunkVariant.UNIFORM_UNSELECTED:
        pool = list(range(n))
    elif variant is DrunkVariant.UNIFORM_UNBURNED:
        upool = list(range(n))
        upos = list(range(n))

    def burn_unburned_pool(v: int) -> None:
        # swap-remove keeps draws index-stable between implementations
        i = upos[v]
        last = upool[-1]
        upool[i] = last
        upos[last] = i
        upool.pop()

    cap = _stall_cap(n)
    t = 0
    while True:
        t += 1
        if t > 1 and frontier:
            nbrs = _gather(g, np.asarray(frontier, dtype=np.int64))
            nbrs = nbrs[~burned[nbrs]]
            fresh = np.unique(nbrs)
            burned[fresh] = True
            burned_count += int(fresh.size)
            frontier = fresh.tolist()
            if variant is DrunkVariant.UNIFORM_UNBURNED:
                for v in frontier:  # ascending ids
                    burn_unburned_pool(v)
        elif t > 1:
            frontier = []
        if burned_count == n:
            return t

        if variant is DrunkVariant.UNIFORM_ALL:
            v = rng.below(n)
            if not burned[v]:
                burned[v] = True
                burned_count += 1
                frontier.append(v)
        elif variant is DrunkVariant.UNIFORM_UNSELECTED:
            if pool:
                i = rng.below(len(pool))
                v = pool[i]
                pool[i] = pool[-1]
                pool.pop()
                if not burned[v]:
                    burned[v] = True
                    burned_count += 1
                    frontier.append(v)
        else:
            i = rng.below(len(upool))
            v = upool[i]
            burn_unburned_pool(v)
            burned[v] = True
            burned_count += 1
            frontier.append(v)

        if burned_count == n:
            return t
        if variant is DrunkVariant.UNIFORM_ALL and t >= cap:
            return STALLED


# ------------------------------------------------------------------ fast path

def _gap_close(pa: int, ta: int, pb: int, tb: int) -> int:
    # first round at which the stretch strictly between pa and pb is burned
    return (pb - pa - 1 + ta + tb + 1) // 2


def _alive_max(heap, ps, n):
    """Largest close-round among still-current heap entries."""
    while heap:
        negt, a, b = heap[0]
        if a == -1:
            if ps[0] == b:
                return -negt
        elif b == n:
            if ps[-1] == a:
                return -negt
        else:
            i = bisect.bisect_left(ps, a)
            if i + 1 < len(ps) and ps[i] == a and ps[i + 1] == b:
                return -negt
        heapq.heappop(heap)
    return 0


def _interval_burned(ps, ts, v, t) -> bool:
    # sources were unburned when ignited, so the nearest source on each
    # side has the farthest reach toward v
    i = bisect.bisect_left(ps, v)
    if i < len(ps) and ps[i] == v:
        return True
    if i > 0 and ps[i - 1] + (t - ts[i - 1]) >= v:
        return True
    if i < len(ps) and ps[i] - (t - ts[i]) <= v:
        return True
    return False


def _interval_insert(ps, ts, heap, v, t, n) -> None:
    i = bisect.bisect_left(ps, v)
    ps.insert(i, v)
    ts.insert(i, t)
    if i > 0:
        heapq.heappush(heap, (-_gap_close(ps[i - 1], ts[i - 1], v, t), ps[i - 1], v))
    else:
        heapq.heappush(heap, (-(v + t), -1, v))
    if i + 1 < len(ps):
        heapq.heappush(heap, (-_gap_close(v, t, ps[i + 1], ts[i + 1]), v, ps[i + 1]))
    else:
        heapq.heappush(heap, (-((n - 1 - v) + t), v, n))


def path_drunk_trial_fast(n: int, variant: DrunkVariant, seed: int) -> int:
    """Drunk trial on the n-vertex path, via interval bookkeeping."""
    if not isinstance(variant, DrunkVariant):
        raise TypeError(f"expected DrunkVariant, got {variant!r}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    rng = Splitmix64(seed)
    if variant is DrunkVariant.UNIFORM_UNBURNED:
        return _fast_unburned(n, rng)
    return _fast_interval(n, variant, rng)


def _fast_interval(n: int, variant: DrunkVariant, rng: Splitmix64) -> int:
    ps: list[int] = []  # sorted source positions
    ts: list[int] = []  # matching ignition rounds
    heap: list = []     # (-close_round, left, right); -1/n flag the path ends
    if variant is DrunkVariant.UNIFORM_UNSELECTED:
        pool = list(range(n))
    t = 0
    while True:
        t += 1
        if ps and _alive_max(heap, ps, n) <= t:
            return t
        if variant is DrunkVariant.UNIFORM_ALL:
            v = rng.below(n)
        else:
            if not pool:
                # nothing left to select: the fire finishes on its own
                return _alive_max(heap, ps, n)
            i = rng.below(len(pool))
            v = pool[i]
            pool[i] = pool[-1]
            pool.pop()
        if not _interval_burned(ps, ts, v, t):
            _interval_insert(ps, ts, heap, v, t, n)
            if _alive_max(heap, ps, n) <= t:
                return t


def _fast_unburned(n: int, rng: Splitmix64) -> int:
    burned = bytearray(n)
    upool = list(range(n))
    upos = list(range(n))
    fronts: list[list[int]] = []  # [position, direction]
    count = 0

    def remove(v: int) -> None:
        i = upos[v]
        last = upool[-1]
        upool[i] = last
        upos[last] = i
        upool.pop()

    t = 0
    while True:
        t += 1
        if t > 1 and fronts:
            fresh = set()
            live = []
            for f in fronts:
                q = f[0] + f[1]
                if 0 <= q < n and not burned[q]:
                    fresh.add(q)
                    live.append([q, f[1]])
            fronts = live
            for q in sorted(fresh):  # ascending, like the generic spread
                burned[q] = 1
                remove(q)
                count += 1
        if count == n:
            return t
        i = rng.below(len(upool))
        v = upool[i]
        remove(v)
        burned[v] = 1
        count += 1
        fronts.append([v, -1])
        fronts.append([v, 1])
        if count == n:
            return t


# ------------------------------------------------------------------ estimates

@dataclass(frozen=True, eq=False)
class TrialStats:
    variant: DrunkVariant
    trials: int
    samples: tuple
    mean: float
    stddev: float
    quantiles: tuple  # (p05, p50, p95)
    ci95: float
    b_reference: Optional[int]
    cost: Optional[float]
    stalled: int
    quantiles_exact: bool


def _ceil_sqrt(n: int) -> int:
    return math.isqrt(n - 1) + 1


def drunk_estimate(
    instance: Union[int, Graph],
    variant: DrunkVariant,
    trials: int,
    master_seed: int,
) -> TrialStats:
    """Aggregate independent trials; paths (given as an int) use the
    fast kernel and get the square-root reference for free."""
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")
    is_path = isinstance(instance, int)
    if is_path and instance < 1:
        raise ValueError(f"need n >= 1, got {instance}")

    keep_all = trials <= FULL_SAMPLE_CAP
    reservoir_rng = None if keep_all else Splitmix64(mix(master_seed, trials))
    samples: list[int] = []
    stalled = 0
    seen = 0
    total = 0.0
    total_sq = 0.0
    for idx in range(trials):
        seed = mix(master_seed, idx)
        if is_path:
            r = path_drunk_trial_fast(instance, variant, seed)
        else:
            r = drunk_trial(instance, variant, seed)
        if r is STALLED:
            stalled += 1
            continue
        total += r
        total_sq += r * r
        if keep_all:
            samples.append(r)
        elif len(samples) < RESERVOIR_SIZE:
            samples.append(r)
        else:
            j = reservoir_rng.below(seen + 1)
            if j < RESERVOIR_SIZE:
                samples[j] = r
        seen += 1

    if seen == 0:
        raise RuntimeError(f"all {trials} trials stalled")

    if keep_all:
        arr = np.asarray(samples, dtype=np.float64)
        mean = float(arr.mean())
        stddev = float(arr.std(ddof=1)) if seen > 1 else 0.0
    else:
        mean = total / seen
        var = max(0.0, (total_sq - total * total / seen) / (seen - 1))
        stddev = math.sqrt(var)
    q05, q50, q95 = (
        float(x) for x in np.percentile(np.asarray(samples, dtype=np.float64), [5, 50, 95])
    )
    ci95 = 1.96 * stddev / math.sqrt(seen)

    if is_path:
        b_ref: Optional[int] = _ceil_sqrt(instance)
    elif instance.n <= _B_REFERENCE_MAX_N:
        b_ref = burning_number_exact(instance).b
    else:
        b_ref = None
    cost = mean / b_ref if b_ref is not None else None

    return TrialStats(
        variant=variant,
        trials=trials,
        samples=tuple(samples),
        mean=mean,
        stddev=stddev,
        quantiles=(q05, q50, q95),
        ci95=ci95,
        b_reference=b_ref,
        cost=cost,
        stalled=stalled,
        quantiles_exact=keep_all,
    )


def cost_of_drunkenness(
    instance: Union[int, Graph],
    variant: DrunkVariant,
    trials: int,
    master_seed: int,
) -> float:
    """Mean trial rounds divided by the exact burning number."""
    stats = drunk_estimate(instance, variant, trials, master_seed)
    if stats.cost is not None:
        return stats.cost
    b = burning_number_exact(instance).b
    return stats.mean / b
