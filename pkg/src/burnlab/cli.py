"""Command-line front end.

Subcommands cover the full pipeline: generate graphs, run burns,
solve or bound burning numbers, build constructive schedules, run
randomized-ignition trials, evaluate closed-form predictors, and
drive experiment sweeps.  Single-instance commands print one JSON
object; sweeps stream CSV rows to their output file.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

import argparse
import json
import sys

import numpy as np

from .drunk import DrunkVariant, drunk_estimate
from .engine import (INCOMPLETE, PERMISSIVE, STRICT, read_schedule, simulate,
                     write_schedule)
from .generators import (critical_radius, gen_gnp, gen_rgg, gen_structured,
                         read_points, write_points)
from .graph import read_edge_file, write_edge_file
from .predictors import (OUT_OF_REGIME, predict_gnp, predict_grid,
                         predict_path_drunk)
from .solver import (burning_number_bruteforce, burning_number_exact,
                     is_b_two, lower_bound_ballsum, upper_bound_center)
from .strategies import (grid_lower_bound, grid_narrow_schedule,
                         grid_strip_schedule, path_schedule,
                         rgg_cell_schedule, rgg_lower_bound)
from .sweep import parse_config, run_sweep


class UsageError(Exception):
    """Bad flag combination caught after argparse."""


def _py(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, default=_py))


# ------------------------------------------------------------------ commands

def _cmd_gen(args) -> dict:
    if args.model == "path":
        g = gen_structured("path", 1, _need(args, "n"))
    elif args.model in ("grid", "torus"):
        g = gen_structured(args.model, _need(args, "m"), _need(args, "n"))
    elif args.model == "gnp":
        g = gen_gnp(_need(args, "n"), _need(args, "p"), args.seed).graph
    elif args.model == "rgg":
        n = _need(args, "n")
        if args.r is not None and args.rmult is not None:
            raise UsageError("give --r or --rmult, not both")
        if args.r is not None:
            r = args.r
        elif args.rmult is not None:
            r = args.rmult * critical_radius(n)
        else:
            raise UsageError("rgg needs --r or --rmult")
        g, pts = gen_rgg(n, r, args.seed)
        write_edge_file(g, args.out)
        out = {"model": "rgg", "n": g.n, "m": g.m, "r": r, "out": args.out}
        if args.pts:
            write_points(pts, args.pts)
            out["pts"] = args.pts
        return out
    else:  # argparse choices make this unreachable
        raise UsageError(f"unknown model {args.model!r}")
    write_edge_file(g, args.out)
    return {"model": args.model, "n": g.n, "m": g.m, "out": args.out}


def _cmd_burn(args) -> dict:
    g = read_edge_file(args.input)
    strictness = PERMISSIVE if args.permissive else STRICT
    sched = read_schedule(args.schedule, strictness)
    tr = simulate(g, sched)
    done = tr.completion_round is not INCOMPLETE
    return {"n": g.n, "sources": len(sched),
            "completion_round": tr.completion_round if done else None,
            "burned": tr.burned_count(), "complete": done}


def _cmd_solve(args) -> dict:
    g = read_edge_file(args.input)
    res = (burning_number_bruteforce(g) if args.brute
           else burning_number_exact(g))
    replay = simulate(g, res.witness)
    if replay.completion_round != res.b:
        raise RuntimeError(f"witness replay gave {replay.completion_round}, "
                           f"solver claimed {res.b}")
    return {"b": res.b, "schedule": list(res.witness.sources),
            "nodes": res.nodes_explored, "verified": True}


def _cmd_bound(args) -> dict:
    modes = sum(x is not None for x in (args.input, args.grid, args.rgg_r))
    if modes != 1:
        raise UsageError("give exactly one of --input, --grid, --rgg-r")
    if args.grid is not None:
        m, n = args.grid
        return {"kind": "grid-lower", "m": m, "n": n,
                "lower": grid_lower_bound(m, n)}
    if args.rgg_r is not None:
        b = rgg_lower_bound(args.rgg_r, args.c0)
        return {"kind": "rgg-lower", "r": b.r, "C0": b.C0, "t": b.t}
    g = read_edge_file(args.input)
    lb = lower_bound_ballsum(g)
    ub = upper_bound_center(g)
    return {"kind": "graph", "n": g.n,
            "lower_ballsum": lb.value, "upper_center": ub.value,
            "b2": is_b_two(g) if g.n >= 2 else False}


def _cmd_strategy(args) -> dict:
    sched = None
    if args.kind == "path":
        n = _need(args, "n")
        sched = path_schedule(n)
        tr = simulate(gen_structured("path", 1, n), sched)
        out = {"kind": "path", "n": n, "rounds": tr.completion_round,
               "schedule": list(sched.sources)}
    elif args.kind in ("strip", "narrow"):
        m, n = _need(args, "m"), _need(args, "n")
        plan = (grid_strip_schedule(m, n, args.c) if args.kind == "strip"
                else grid_narrow_schedule(m, n))
        out = {"kind": args.kind, "m": plan.m, "n": plan.n,
               "rounds": plan.achieved_rounds, "k1": plan.k1, "k2": plan.k2,
               "schedule": list(plan.schedule.sources)}
        sched = plan.schedule
    elif args.kind == "rgg-cell":
        if not args.input or not args.pts:
            raise UsageError("rgg-cell needs --input and --pts")
        g = read_edge_file(args.input)
        pts = read_points(args.pts)
        plan = rgg_cell_schedule(g, pts, args.a)
        done = plan.achieved_rounds is not INCOMPLETE
        out = {"kind": "rgg-cell", "n": g.n,
               "rounds": plan.achieved_rounds if done else None,
               "complete": done, "ignitions": len(plan.ignitions),
               "schedule": list(plan.schedule.sources)}
        sched = plan.schedule
    else:
        raise UsageError(f"unknown kind {args.kind!r}")
    if args.out:
        write_schedule(sched, args.out)
        out["out"] = args.out
    return out


def _cmd_drunk(args) -> dict:
    variant = DrunkVariant(args.variant)
    if (args.n is None) == (args.input is None):
        raise UsageError("give exactly one of --n (path) or --input (graph)")
    instance = args.n if args.n is not None else read_edge_file(args.input)
    st = drunk_estimate(instance, variant, args.trials, args.seed)
    if args.csv:
        with open(args.csv, "w") as fh:
            for s in st.samples:
                fh.write(f"{s}\n")
    out = {"variant": variant.value, "trials": st.trials,
           "seed": args.seed, "mean": st.mean, "stddev": st.stddev,
           "p05": st.quantiles[0], "p50": st.quantiles[1],
           "p95": st.quantiles[2], "ci95": st.ci95,
           "stalled": st.stalled, "b_reference": st.b_reference,
           "cost": st.cost}
    if args.csv:
        out["csv"] = args.csv
    return out


def _cmd_predict(args) -> dict:
    if args.model == "gnp":
        n, p = _need(args, "n"), _need(args, "p")
        pred = predict_gnp(n, p, args.eps, args.delta)
        if pred is OUT_OF_REGIME:
            return {"model": "gnp", "n": n, "p": p, "d": p * (n - 1),
                    "case": "out-of-regime"}
        return {"model": "gnp", "n": n, "p": p, "d": pred.d,
                "eps": pred.eps, "delta": pred.delta, "omega": pred.omega,
                "i": pred.i, "case": pred.case,
                "predicted": sorted(pred.predicted), "margin": pred.margin}
    if args.model == "grid":
        m, n = _need(args, "m"), _need(args, "n")
        pred = predict_grid(m, n)
        return {"model": "grid", "m": m, "n": n, "leading": pred.leading,
                "regime": pred.regime, "k0": pred.k0, "lower": pred.lower}
    if args.model == "path-drunk":
        n = _need(args, "n")
        variant = DrunkVariant(args.variant)
        ref = predict_path_drunk(n, variant, args.k3)
        if variant is DrunkVariant.UNIFORM_UNBURNED:
            return {"model": "path-drunk", "n": n, "variant": variant.value,
                    "low": ref[0], "high": ref[1]}
        return {"model": "path-drunk", "n": n, "variant": variant.value,
                "ref": ref}
    raise UsageError(f"unknown model {args.model!r}")


def _cmd_sweep(args) -> dict:
    with open(args.config) as fh:
        config = parse_config(fh.read())
    if args.output:
        config = type(config)(config.study, dict(config.grid),
                              config.master_seed, args.output)
    table = run_sweep(config)
    return {"study": config.study, "cells": len(table),
            "output": config.output}


def _need(args, name: str):
    val = getattr(args, name, None)
    if val is None:
        raise UsageError(f"this mode needs --{name}")
    return val


# -------------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="burnlab",
        description="graph burning laboratory")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("--model", required=True,
                   choices=("path", "grid", "torus", "gnp", "rgg"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--r", type=float)
    p.add_argument("--rmult", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--pts")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("burn", help="replay a schedule through the engine")
    p.add_argument("--input", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--permissive", action="store_true")
    p.set_defaults(func=_cmd_burn)

    p = sub.add_parser("solve", help="exact burning number with witness")
    p.add_argument("--input", required=True)
    p.add_argument("--brute", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bound", help="certified bounds without solving")
    p.add_argument("--input")
    p.add_argument("--grid", nargs=2, type=int, metavar=("M", "N"))
    p.add_argument("--rgg-r", dest="rgg_r", type=float)
    p.add_argument("--C0", dest="c0", type=float, default=400.0)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("strategy", help="constructive schedules")
    p.add_argument("--kind", required=True,
                   choices=("path", "strip", "narrow", "rgg-cell"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--C", dest="c", type=float, default=1.0)
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--input")
    p.add_argument("--pts")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_strategy)

    p = sub.add_parser("drunk", help="randomized-ignition trials")
    p.add_argument("--variant", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--n", type=int)
    p.add_argument("--input")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_drunk)

    p = sub.add_parser("predict", help="closed-form predictions")
    p.add_argument("--model", required=True,
                   choices=("gnp", "grid", "path-drunk"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--variant", type=int, default=1, choices=(1, 2, 3))
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--k3", type=float, default=4.0)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("sweep", help="run an experiment sweep from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_sweep)

    return top


def cli_dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse owns usage errors and --help
        code = e.code if e.code is not None else 0
        return 0 if code == 0 else 2
    try:
        payload = args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    _emit(payload)
    return 0


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
