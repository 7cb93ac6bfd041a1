"""Burning-process execution.

Round t >= 1 runs two sub-steps in a fixed order: SPREAD (every unburned
neighbor of a vertex burned by the end of round t-1 burns), then IGNITE
(source x_t burns, while the schedule lasts).  Strict schedules treat
igniting an already-burned vertex as an error; permissive ones treat it as
a no-op.  After the schedule is exhausted, spreading continues alone until
it makes no progress.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, _gather, mark_ball

# Completion sentinel for traces that stall on a disconnected remainder.
INCOMPLETE = None

STRICT = "strict"
PERMISSIVE = "permissive"


class IgnitionError(ValueError):
    """Strict-mode ignition of an already-burned vertex."""


@dataclass(frozen=True)
class BurnSchedule:
    sources: tuple
    strictness: str = STRICT

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(int(x) for x in self.sources))
        if self.strictness not in (STRICT, PERMISSIVE):
            raise ValueError(f"strictness must be strict|permissive, got {self.strictness!r}")
        if any(x < 0 for x in self.sources):
            raise ValueError("negative vertex id in schedule")
        if self.strictness == STRICT and len(set(self.sources)) != len(self.sources):
            raise ValueError("strict schedule has repeated sources")

    def __len__(self) -> int:
        return len(self.sources)


@dataclass(frozen=True)
class BurnTrace:
    rounds: tuple  # per-round tuples of newly burned ids, sorted
    completion_round: object  # int, or INCOMPLETE
    burned_final: np.ndarray = field(repr=False)  # bool per vertex

    def __post_init__(self):
        self.burned_final.flags.writeable = False

    def burned_count(self) -> int:
        return int(np.count_nonzero(self.burned_final))


def _as_schedule(schedule, default_strictness=STRICT) -> BurnSchedule:
    if isinstance(schedule, BurnSchedule):
        return schedule
    return BurnSchedule(tuple(schedule), default_strictness)


def simulate(g: Graph, schedule) -> BurnTrace:
    sched = _as_schedule(schedule)
    for x in sched.sources:
        if x >= g.n:
            raise ValueError(f"schedule source {x} out of range for n={g.n}")
    n = g.n
    k = len(sched.sources)
    strict = sched.strictness == STRICT
    burned = np.zeros(n, dtype=bool)
    stamp = np.full(n, 0, dtype=np.int64)  # round at which each vertex burned
    total = 0
    rounds = []
    frontier = np.empty(0, dtype=np.int64)
    t = 0
    completion = INCOMPLETE
    while True:
        t += 1
        # spread
        if frontier.size:
            nbrs = _gather(g, frontier)
            new = nbrs[~burned[nbrs]]
            if new.size:
                burned[new] = True
                stamp[new] = t
        newly = np.flatnonzero(stamp == t) if frontier.size else np.empty(0, dtype=np.int64)
        total += newly.size
        newly_list = newly.tolist()
        # ignite
        if t <= k:
            x = sched.sources[t - 1]
            if burned[x]:
                if strict:
                    raise IgnitionError(f"round {t}: source {x} already burned")
            else:
                burned[x] = True
                stamp[x] = t
                total += 1
                pos = int(np.searchsorted(newly, x))
                newly_list.insert(pos, x)
        rounds.append(tuple(newly_list))
        if total == n:
            completion = t
            if strict and t < k:
                # the remaining sources could only ignite burned vertices
                raise IgnitionError(
                    f"all vertices burned at round {t} but {k - t} sources remain"
                )
            break
        if t >= k and not newly_list:
            completion = INCOMPLETE
            rounds.pop()  # the stall round burned nothing
            break
        frontier = np.array(newly_list, dtype=np.int64)
    return BurnTrace(tuple(rounds), completion, burned)


def covered_by_balls(g: Graph, centers, k: int) -> bool:
    """True iff the union of N(x_i, k-i) over the centers is all of V."""
    centers = [int(c) for c in centers]
    if len(centers) > k:
        raise ValueError(f"{len(centers)} centers but only {k} rounds")
    covered = np.zeros(g.n, dtype=bool)
    remaining = g.n
    for i, c in enumerate(centers, start=1):
        remaining -= mark_ball(g, c, k - i, covered)
        if remaining == 0:
            return True
    return False


def repair_schedule(g: Graph, centers) -> BurnSchedule:
    """Replay centers; substitute burned ones with the smallest unburned id.

    If no unburned vertex exists at some ignition, that ignition and all
    later ones are dropped.  The result is a strict schedule burning a
    superset of what the input would, in no more rounds.
    """
    if isinstance(centers, BurnSchedule):
        centers = centers.sources
    centers = [int(c) for c in centers]
    for x in centers:
        if not 0 <= x < g.n:
            raise ValueError(f"center {x} out of range for n={g.n}")
    burned = np.zeros(g.n, dtype=bool)
    kept = []
    frontier = np.empty(0, dtype=np.int64)
    for x in centers:
        if frontier.size:
            nbrs = _gather(g, frontier)
            new = np.unique(nbrs[~burned[nbrs]])
            burned[new] = True
        else:
            new = np.empty(0, dtype=np.int64)
        if burned[x]:
            unburned = np.flatnonzero(~burned)
            if unburned.size == 0:
                break
            x = int(unburned[0])
        burned[x] = True
        kept.append(x)
        frontier = np.append(new, x)
    return BurnSchedule(tuple(kept), STRICT)


def write_schedule(schedule, path) -> None:
    sched = _as_schedule(schedule)
    with open(path, "w") as fh:
        fh.write(f"{len(sched.sources)}\n")
        for x in sched.sources:
            fh.write(f"{x}\n")


def read_schedule(path, strictness=STRICT) -> BurnSchedule:
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValueError("empty schedule file")
    k = int(tokens[0])
    ids = [int(t) for t in tokens[1:]]
    if len(ids) != k:
        raise ValueError(f"schedule file declares {k} sources but has {len(ids)}")
    return BurnSchedule(tuple(ids), strictness)
