import json
import math

import pytest

from burnlab.cli import cli_dispatch


def run(capsys, *argv):
    code = cli_dispatch(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def make_path9(tmp_path, capsys):
    p = tmp_path / "path9.edges"
    code, _ = run(capsys, "gen", "--model", "path", "--n", "9",
                  "--out", str(p))
    assert code == 0
    return p


# ------------------------------------------------------------------ gen/solve

def test_gen_and_solve_path9(tmp_path, capsys):
    p = make_path9(tmp_path, capsys)
    code, out = run(capsys, "solve", "--input", str(p))
    assert code == 0
    assert out["b"] == 3
    assert out["verified"] is True
    assert len(out["schedule"]) == 3


def test_solve_brute_agrees(tmp_path, capsys):
    p = tmp_path / "g.edges"
    code, _ = run(capsys, "gen", "--model", "gnp", "--n", "8", "--p", "0.3",
                  "--seed", "2", "--out", str(p))
    assert code == 0
    _, exact = run(capsys, "solve", "--input", str(p))
    _, brute = run(capsys, "solve", "--input", str(p), "--brute")
    assert exact["b"] == brute["b"]


def test_gen_deterministic_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.edges", tmp_path / "b.edges"
    run(capsys, "gen", "--model", "gnp", "--n", "40", "--p", "0.2",
        "--seed", "11", "--out", str(a))
    run(capsys, "gen", "--model", "gnp", "--n", "40", "--p", "0.2",
        "--seed", "11", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_gen_rgg_writes_points(tmp_path, capsys):
    e, q = tmp_path / "g.edges", tmp_path / "g.pts"
    code, out = run(capsys, "gen", "--model", "rgg", "--n", "200",
                    "--rmult", "2.0", "--seed", "3",
                    "--out", str(e), "--pts", str(q))
    assert code == 0
    assert q.exists()
    expect = 2.0 * math.sqrt(math.log(200) / (math.pi * 200))
    assert abs(out["r"] - expect) < 1e-12


def test_gen_rgg_flag_conflicts(tmp_path, capsys):
    e = tmp_path / "g.edges"
    code, _ = run(capsys, "gen", "--model", "rgg", "--n", "10",
                  "--r", "0.5", "--rmult", "2.0", "--out", str(e))
    assert code == 2
    code, _ = run(capsys, "gen", "--model", "rgg", "--n", "10",
                  "--out", str(e))
    assert code == 2


# ----------------------------------------------------------------- burn/bound

def test_burn_delegates_to_engine(tmp_path, capsys):
    p = make_path9(tmp_path, capsys)
    s = tmp_path / "p9.sched"
    _, strat = run(capsys, "strategy", "--kind", "path", "--n", "9",
                   "--out", str(s))
    code, out = run(capsys, "burn", "--input", str(p), "--schedule", str(s))
    assert code == 0
    assert out["completion_round"] == strat["rounds"] == 3
    assert out["complete"] is True
    assert out["burned"] == 9


def test_burn_strictness_flag(tmp_path, capsys):
    p = make_path9(tmp_path, capsys)
    s = tmp_path / "rep.sched"
    s.write_text("2\n0\n0\n")  # repeated source
    code, _ = run(capsys, "burn", "--input", str(p), "--schedule", str(s))
    assert code == 1
    code, out = run(capsys, "burn", "--input", str(p), "--schedule", str(s),
                    "--permissive")
    assert code == 0
    # both ignitions hit vertex 0, so the fire just walks the path
    assert out["complete"] is True
    assert out["completion_round"] == 9


def test_bound_modes(tmp_path, capsys):
    p = make_path9(tmp_path, capsys)
    code, out = run(capsys, "bound", "--input", str(p))
    assert code == 0
    assert out["lower_ballsum"] == 3
    assert out["upper_center"] == 5
    assert out["b2"] is False

    code, out = run(capsys, "bound", "--grid", "10", "10")
    assert (code, out["lower"]) == (0, 6)

    code, out = run(capsys, "bound", "--rgg-r", "0.01")
    assert (code, out["t"]) == (0, 2)

    code, _ = run(capsys, "bound", "--grid", "3", "3", "--rgg-r", "0.1")
    assert code == 2
    code, _ = run(capsys, "bound")
    assert code == 2


# ------------------------------------------------------------------ strategy

def test_strategy_strip_burnable(tmp_path, capsys):
    g = tmp_path / "grid.edges"
    s = tmp_path / "strip.sched"
    run(capsys, "gen", "--model", "grid", "--m", "10", "--n", "10",
        "--out", str(g))
    code, strat = run(capsys, "strategy", "--kind", "strip",
                      "--m", "10", "--n", "10", "--out", str(s))
    assert code == 0
    code, burn = run(capsys, "burn", "--input", str(g), "--schedule", str(s),
                     "--permissive")
    assert code == 0
    assert burn["completion_round"] == strat["rounds"]


def test_strategy_rgg_cell(tmp_path, capsys):
    e, q = tmp_path / "g.edges", tmp_path / "g.pts"
    run(capsys, "gen", "--model", "rgg", "--n", "500", "--r", "0.11",
        "--seed", "7", "--out", str(e), "--pts", str(q))
    code, out = run(capsys, "strategy", "--kind", "rgg-cell",
                    "--input", str(e), "--pts", str(q))
    assert code == 0
    assert out["complete"] is True
    assert out["rounds"] == 14
    assert out["ignitions"] == 16


def test_strategy_missing_args(capsys):
    code, _ = run(capsys, "strategy", "--kind", "strip", "--m", "5")
    assert code == 2
    code, _ = run(capsys, "strategy", "--kind", "rgg-cell")
    assert code == 2


# --------------------------------------------------------------------- drunk

def test_drunk_csv_and_stats(tmp_path, capsys):
    raw = tmp_path / "raw.csv"
    code, out = run(capsys, "drunk", "--variant", "3", "--n", "100",
                    "--trials", "60", "--seed", "4", "--csv", str(raw))
    assert code == 0
    samples = [int(x) for x in raw.read_text().split()]
    assert len(samples) == 60
    assert min(samples) >= 10
    assert abs(out["mean"] - sum(samples) / 60) < 1e-9
    assert out["b_reference"] == 10
    assert abs(out["cost"] - out["mean"] / 10) < 1e-9


def test_drunk_graph_input(tmp_path, capsys):
    p = make_path9(tmp_path, capsys)
    code, out = run(capsys, "drunk", "--variant", "2", "--input", str(p),
                    "--trials", "30", "--seed", "1")
    assert code == 0
    assert out["b_reference"] == 3
    assert out["mean"] >= 3

    code, _ = run(capsys, "drunk", "--variant", "2", "--trials", "5")
    assert code == 2  # neither --n nor --input
    code, _ = run(capsys, "drunk", "--variant", "2", "--n", "5",
                  "--input", str(p), "--trials", "5")
    assert code == 2  # both


def test_drunk_deterministic_stdout(tmp_path, capsys):
    args = ("drunk", "--variant", "1", "--n", "50", "--trials", "20",
            "--seed", "9")
    cli_dispatch(list(args))
    first = capsys.readouterr().out
    cli_dispatch(list(args))
    assert capsys.readouterr().out == first


# ------------------------------------------------------------------- predict

def test_predict_grid_example(capsys):
    code, out = run(capsys, "predict", "--model", "grid",
                    "--m", "100", "--n", "100")
    assert code == 0
    assert abs(out["leading"] - 24.66) < 5e-3
    assert out["lower"] == 25


def test_predict_gnp(capsys):
    code, out = run(capsys, "predict", "--model", "gnp",
                    "--n", "3000", "--p", "0.1")
    assert code == 0
    assert out["case"] == "3"
    assert out["i"] == 2
    assert out["predicted"] == [3]
    assert "margin" in out and "omega" in out

    code, out = run(capsys, "predict", "--model", "gnp",
                    "--n", "3000", "--p", "0.001")
    assert code == 0
    assert out["case"] == "out-of-regime"


def test_predict_path_drunk(capsys):
    code, out = run(capsys, "predict", "--model", "path-drunk",
                    "--n", "1000000", "--variant", "1")
    assert code == 0
    assert f"{out['ref']:.4g}" == "2628"
    code, out = run(capsys, "predict", "--model", "path-drunk",
                    "--n", "4", "--variant", "3")
    assert code == 0
    assert (out["low"], out["high"]) == (2.0, 8.0)


# --------------------------------------------------------------------- sweep

def test_sweep_command(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    out_csv = tmp_path / "rows.csv"
    cfg.write_text("study = grid-ratio\nseed = 7\ns = [10, 30]\n"
                   f"output = {out_csv}\n")
    code, out = run(capsys, "sweep", "--config", str(cfg))
    assert code == 0
    assert out["cells"] == 2
    assert out_csv.exists()

    override = tmp_path / "other.csv"
    code, out = run(capsys, "sweep", "--config", str(cfg),
                    "--output", str(override))
    assert code == 0
    assert out["output"] == str(override)
    assert override.exists()


def test_sweep_bad_study(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("study = melt\nn = [1]\noutput = x.csv\n")
    code, _ = run(capsys, "sweep", "--config", str(cfg))
    assert code == 1


# --------------------------------------------------------------- exit codes

def test_exit_codes(capsys):
    assert cli_dispatch(["solve", "--input", "missing.edges"]) == 1
    capsys.readouterr()
    assert cli_dispatch(["solve", "--gnarl"]) == 2
    capsys.readouterr()
    assert cli_dispatch([]) == 2
    capsys.readouterr()
    assert cli_dispatch(["--help"]) == 0
    capsys.readouterr()
    assert cli_dispatch(["drunk", "--variant", "9", "--n", "5",
                         "--trials", "1"]) == 2
    capsys.readouterr()
