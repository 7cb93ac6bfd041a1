"""Experiment sweep runner: cartesian parameter grids streamed to CSV.

A sweep is a named study over a small parameter grid.  Every grid cell
gets a deterministic seed derived from the master seed and the cell
index, so reruns produce byte-identical output (the wall-time column
excepted).  Output is resumable: cells whose rows already exist in the
output file are carried over without recomputation, and the file is
rewritten in cell order so the row order never depends on scheduling.

Config files are flat ``key = value`` lines; lists use ``[a, b, c]``.
``study``, ``seed`` and ``output`` are reserved keys, everything else
names a grid axis.  The optional ``rep`` axis is a plain replicate
counter accepted by every study.
"""

import csv
import io
import itertools
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .drunk import DrunkVariant, drunk_estimate
from .engine import INCOMPLETE, simulate
from .generators import PointSet, critical_radius, gen_gnp, gen_rgg, gen_structured
from .graph import Graph, bfs_distances, induced_subgraph, largest_component, mark_ball
from .predictors import OUT_OF_REGIME, predict_gnp, predict_grid, predict_path_drunk
from .rng import mix
from .solver import (
    burning_number_bruteforce,
    burning_number_exact,
    is_b_two,
    lower_bound_ballsum,
    upper_bound_center,
)
from .strategies import grid_strip_schedule, rgg_cell_schedule, rgg_lower_bound

SCHEMA_VERSION = "burnlab/1"
THREADS_ENV = "BURNLAB_THREADS"

STUDIES = ("gnp-cases", "grid-ratio", "rgg-theta", "drunk-path",
           "oracle-equivalence")

# study -> (required grid axes, measured keys, predicted keys, cert keys)
_SCHEMAS = {
    "gnp-cases": (("n", "p"),
                  ("d_emp", "b2", "diam2", "lb_ballsum", "ub_center"),
                  ("case", "bset", "i"),
                  ("consistent",)),
    "grid-ratio": (("s",),
                   ("achieved",),
                   ("leading", "ratio", "k0"),
                   ("lower", "sandwich_ok", "replay_ok")),
    "rgg-theta": (("n", "rmult"),
                  ("achieved", "giant_frac", "theta"),
                  ("t", "floor"),
                  ("complete", "floor_ok", "replay_ok")),
    "drunk-path": (("n", "variant", "trials"),
                   ("mean", "stddev", "p05", "p50", "p95", "ci95",
                    "stalled", "min"),
                   ("ref", "ratio"),
                   ("floor_ok",)),
    "oracle-equivalence": (("n", "count"),
                           ("matches",),
                           ("expected",),
                           ("ok",)),
}


@dataclass(frozen=True)
class SweepConfig:
    study: str
    grid: dict          # axis name -> tuple of scalar values
    master_seed: int = 0
    output: str = ""

    def __post_init__(self):
        if self.study not in STUDIES:
            raise ValueError(f"unknown study {self.study!r}; "
                             f"expected one of {'|'.join(STUDIES)}")
        required = set(_SCHEMAS[self.study][0])
        fixed = {}
        for key, vals in self.grid.items():
            if key not in required and key != "rep":
                raise ValueError(f"study {self.study!r} does not take "
                                 f"axis {key!r}")
            vals = tuple(vals) if isinstance(vals, (list, tuple)) else (vals,)
            if not vals:
                raise ValueError(f"axis {key!r} has an empty value list")
            fixed[key] = vals
        missing = required - set(fixed)
        if missing:
            raise ValueError(f"study {self.study!r} is missing "
                             f"axes {sorted(missing)}")
        object.__setattr__(self, "grid", fixed)

    def axes(self) -> tuple:
        return tuple(sorted(self.grid))

    def cells(self) -> list:
        """All grid cells in canonical order as dicts, sorted-axis product."""
        names = self.axes()
        out = []
        for combo in itertools.product(*(self.grid[k] for k in names)):
            out.append(dict(zip(names, combo)))
        if not out:
            raise ValueError("parameter grid is empty")
        return out


@dataclass(frozen=True)
class ResultRow:
    study: str
    instance_id: str
    params: dict
    seed: int
    measured: dict
    predicted: dict
    cert: dict
    ms: int = field(compare=False)

    def fields(self, axes) -> list:
        m, p, c = _SCHEMAS[self.study][1:]
        return ([self.study, self.instance_id]
                + [_fmt(self.params[a]) for a in axes]
                + [_fmt(self.seed)]
                + [_fmt(self.measured[k]) for k in m]
                + [_fmt(self.predicted[k]) for k in p]
                + [_fmt(self.cert[k]) for k in c]
                + [_fmt(self.ms)])


def _fmt(x) -> str:
    if x is None or x == "":
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, float):
        return repr(x)
    return str(x)


def header_for(config: SweepConfig) -> list:
    m, p, c = _SCHEMAS[config.study][1:]
    return (["study", "instance_id"]
            + [f"param:{a}" for a in config.axes()]
            + ["seed"]
            + [f"measured:{k}" for k in m]
            + [f"predicted:{k}" for k in p]
            + [f"cert:{k}" for k in c]
            + ["ms"])


# ------------------------------------------------------------ config parsing

def _scalar(tok: str):
    tok = tok.strip()
    if not tok:
        raise ValueError("empty value")
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        return float(tok)
    except ValueError:
        return tok


def parse_config(text: str) -> SweepConfig:
    """Parse ``key = value`` lines; '#' starts a comment."""
    study = None
    seed = 0
    output = ""
    grid = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', "
                             f"got {raw.rstrip()!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not key or not val:
            raise ValueError(f"line {lineno}: expected 'key = value', "
                             f"got {raw.rstrip()!r}")
        if val.startswith("["):
            if not val.endswith("]"):
                raise ValueError(f"line {lineno}: unterminated list")
            items = [t for t in val[1:-1].split(",") if t.strip()]
            if not items:
                raise ValueError(f"line {lineno}: empty list for {key!r}")
            parsed = tuple(_scalar(t) for t in items)
        else:
            parsed = _scalar(val)
        if key == "study":
            study = str(parsed)
        elif key == "seed":
            seed = int(parsed)
        elif key == "output":
            output = str(parsed)
        else:
            grid[key] = parsed
    if study is None:
        raise ValueError("config is missing the 'study' key")
    return SweepConfig(study, grid, seed, output)


# ------------------------------------------------------------- cell runners

def _ceil_sqrt(n: int) -> int:
    return math.isqrt(n - 1) + 1


def _diam_le2(g: Graph) -> bool:
    buf = np.zeros(g.n, dtype=bool)
    for v in range(g.n):
        buf[:] = False
        if mark_ball(g, v, 2, buf) < g.n:
            return False
    return True


def _cell_gnp(params: dict, seed: int):
    n, p = params["n"], params["p"]
    sample = gen_gnp(n, float(p), seed)
    g = sample.graph
    connected = bfs_distances(g, 0).reachable() == n
    b2 = is_b_two(g) if n >= 2 else False
    pred = predict_gnp(n, float(p))
    if pred is OUT_OF_REGIME:
        predicted = {"case": "out-of-regime", "bset": "", "i": ""}
        pset = None
    else:
        predicted = {"case": pred.case,
                     "bset": "|".join(str(v) for v in sorted(pred.predicted)),
                     "i": "" if pred.i is None else pred.i}
        pset = pred.predicted
    # the two-step ball scan is only worth running when 2 or 3 is in play
    cheap = pset is not None and (pset & {2, 3})
    diam2 = _diam_le2(g) if (connected and cheap) else ""
    lb = lower_bound_ballsum(g).value if connected else ""
    ub = upper_bound_center(g).value if connected else ""
    measured = {"d_emp": 2.0 * g.m / n, "b2": b2, "diam2": diam2,
                "lb_ballsum": lb, "ub_center": ub}
    if pset is None or not connected:
        consistent = ""
    elif b2:
        consistent = 2 in pset
    elif diam2 is True:
        consistent = 3 in pset
    else:
        consistent = any(lb <= v <= ub for v in pset)
    return measured, predicted, {"consistent": consistent}


def _cell_grid(params: dict, seed: int):
    s = params["s"]
    plan = grid_strip_schedule(s, s)
    pred = predict_grid(s, s)
    replay = simulate(gen_structured("grid", s, s), plan.schedule)
    return ({"achieved": plan.achieved_rounds},
            {"leading": pred.leading,
             "ratio": plan.achieved_rounds / pred.leading,
             "k0": pred.k0},
            {"lower": pred.lower,
             "sandwich_ok": pred.lower <= plan.achieved_rounds,
             "replay_ok": replay.completion_round == plan.achieved_rounds})


def _cell_rgg(params: dict, seed: int):
    n, rmult = params["n"], float(params["rmult"])
    r = rmult * critical_radius(n)
    g, pts = gen_rgg(n, r, seed)
    giant = largest_component(g)
    sub, orig = induced_subgraph(g, giant)
    spts = PointSet(pts.points[orig], r)
    plan = rgg_cell_schedule(sub, spts)
    bound = rgg_lower_bound(r)
    achieved = plan.achieved_rounds
    complete = achieved is not INCOMPLETE
    replay = simulate(sub, plan.schedule)
    theta = achieved * r ** (2 / 3) if complete else ""
    floor_ok = (achieved >= bound.t + 1) if (complete and bound.t >= 1) else ""
    return ({"achieved": achieved if complete else "",
             "giant_frac": giant.size / n,
             "theta": theta},
            {"t": bound.t, "floor": bound.t + 1},
            {"complete": complete,
             "floor_ok": floor_ok,
             "replay_ok": replay.completion_round == plan.achieved_rounds})


def _cell_drunk(params: dict, seed: int):
    n, trials = params["n"], params["trials"]
    variant = DrunkVariant(int(params["variant"]))
    st = drunk_estimate(n, variant, trials, seed)
    if variant is DrunkVariant.UNIFORM_UNBURNED:
        ref = predict_path_drunk(n, variant)[0]
    else:
        ref = predict_path_drunk(n, variant)
    lowest = min(st.samples) if st.samples else ""
    floor = _ceil_sqrt(n)
    return ({"mean": st.mean, "stddev": st.stddev,
             "p05": st.quantiles[0], "p50": st.quantiles[1],
             "p95": st.quantiles[2], "ci95": st.ci95,
             "stalled": st.stalled, "min": lowest},
            {"ref": ref, "ratio": st.mean / ref},
            {"floor_ok": (lowest >= floor) if lowest != "" else ""})


def _cell_oracle(params: dict, seed: int):
    n, count = params["n"], params["count"]
    if n > 9:
        raise ValueError(f"oracle-equivalence is a desk-scale study; "
                         f"n = {n} is past the brute-force cap")
    matches = 0
    for j in range(count):
        p = (0.1, 0.25, 0.5)[j % 3]
        g = gen_gnp(n, p, mix(seed, j)).graph
        if burning_number_exact(g).b == burning_number_bruteforce(g).b:
            matches += 1
    return ({"matches": matches},
            {"expected": count},
            {"ok": matches == count})


_RUNNERS = {
    "gnp-cases": _cell_gnp,
    "grid-ratio": _cell_grid,
    "rgg-theta": _cell_rgg,
    "drunk-path": _cell_drunk,
    "oracle-equivalence": _cell_oracle,
}


# --------------------------------------------------------------- sweep loop

def _run_cell(config: SweepConfig, idx: int, params: dict) -> ResultRow:
    seed = mix(config.master_seed, idx)
    t0 = time.perf_counter()
    measured, predicted, cert = _RUNNERS[config.study](params, seed)
    ms = int(round(1000 * (time.perf_counter() - t0)))
    return ResultRow(config.study, f"{config.study}-{idx:06d}", params,
                     seed, measured, predicted, cert, ms)


def _load_existing(path: str, header: list) -> dict:
    """Map instance_id -> raw field list for rows already on disk."""
    if not path or not os.path.exists(path):
        return {}
    rows = {}
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(io.StringIO("".join(lines)))
    try:
        old_header = next(reader)
    except StopIteration:
        return {}
    if old_header != header:
        return {}  # schema changed; recompute everything
    for rec in reader:
        if len(rec) == len(header):
            rows[rec[1]] = rec
    return rows


def _workers(n_pending: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    limit = int(cap) if cap else (os.cpu_count() or 1)
    if limit < 1:
        raise ValueError(f"{THREADS_ENV} must be >= 1, got {limit}")
    return max(1, min(limit, n_pending))


def run_sweep(config: SweepConfig) -> list:
    """Execute the grid; returns the full table as lists of CSV fields.

    Rows stream to ``config.output`` in cell order through a single
    writer, whatever order the worker pool finishes in.  Cells already
    present in the output file are reused verbatim (their wall time
    included), so interrupting and rerunning never repeats work.
    """
    if not config.output:
        raise ValueError("config has no output path")
    cells = config.cells()
    header = header_for(config)
    axes = config.axes()
    done = _load_existing(config.output, header)
    pending = [(i, ps) for i, ps in enumerate(cells)
               if f"{config.study}-{i:06d}" not in done]

    futures = {}
    pool = ThreadPoolExecutor(max_workers=_workers(max(1, len(pending))))
    try:
        for i, ps in pending:
            futures[i] = pool.submit(_run_cell, config, i, ps)
        table = []
        with open(config.output, "w", newline="") as fh:
            fh.write(f"# schema={SCHEMA_VERSION}\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for i in range(len(cells)):
                key = f"{config.study}-{i:06d}"
                rec = done[key] if key in done else futures[i].result().fields(axes)
                writer.writerow(rec)
                fh.flush()
                table.append(rec)
    finally:
        pool.shutdown(wait=False, cancel_futures=True)
    return table
