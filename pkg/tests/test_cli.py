"""End-to-end checks of the command line layer, run in process."""

import json

import pytest

from pgrow.cli import main
from pgrow.fields import load_snapshot
from pgrow.fixtures import worked_example

EXPOSURE_LINES = [
    "edge 4-5 opened at t=2",
    "vertex 4 paralyzed at t=2 by vertex 5",
    "edge 2-3 opened at t=3",
    "vertex 3 turned green at t=3",
    "edge 3-4 opened at t=5",
    "vertex 2 paralyzed at t=5 by vertex 5",
    "vertex 3 paralyzed at t=5 by vertex 5",
]

CONTIGUOUS_LINES = [
    "edge 4-5 opened at t=2",
    "vertex 4 paralyzed at t=2 by vertex 5",
    "edge 2-3 opened at t=3",
    "vertex 3 turned green at t=3",
    "edge 1-2 opened at t=6",
    "vertex 2 paralyzed at t=6 by vertex 1",
    "vertex 3 paralyzed at t=6 by vertex 1",
]


def test_example_stdout_exposure(capsys):
    assert main(["simulate", "--example-1-2", "--rule", "exposure"]) == 0
    assert capsys.readouterr().out.splitlines() == EXPOSURE_LINES


def test_example_stdout_contiguous(capsys):
    assert main(["simulate", "--example-1-2", "--rule", "contiguous"]) == 0
    assert capsys.readouterr().out.splitlines() == CONTIGUOUS_LINES


def test_example_trace_files(tmp_path, golden_dir, capsys):
    out = tmp_path / "run"
    assert main(["simulate", "--example-1-2", "--rule", "exposure",
                 "--out", str(out)]) == 0
    capsys.readouterr()
    assert (out / "trace.jsonl").read_bytes() == \
        (golden_dir / "example_trace_exposure.jsonl").read_bytes()
    snap = load_snapshot(out / "instance.json")
    _, want_colours, want_weights = worked_example()
    assert list(snap.colours) == list(want_colours)
    assert list(snap.weights.tau) == list(want_weights.tau)
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "simulate"
    assert manifest["files"] == ["instance.json", "trace.jsonl"]
    assert manifest["results"]["paralyzed"] == 3


def test_contiguous_trace_matches_golden(tmp_path, golden_dir, capsys):
    out = tmp_path / "run"
    assert main(["simulate", "--example-1-2", "--rule", "contiguous",
                 "--out", str(out)]) == 0
    capsys.readouterr()
    assert (out / "trace.jsonl").read_bytes() == \
        (golden_dir / "example_trace_contiguous.jsonl").read_bytes()


def test_config_file_supplies_options(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# worked example\nexample-1-2 = on\nrule = contiguous\n")
    assert main(["simulate", "--config", str(cfg)]) == 0
    assert capsys.readouterr().out.splitlines() == CONTIGUOUS_LINES


def test_explicit_flag_beats_the_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("example-1-2 = on\nrule = contiguous\n")
    assert main(["simulate", "--config", str(cfg),
                 "--rule", "exposure"]) == 0
    assert capsys.readouterr().out.splitlines() == EXPOSURE_LINES


def test_unknown_config_key_is_a_usage_error(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("rule = exposure\nbogus = 1\n")
    assert main(["simulate", "--config", str(cfg)]) == 2
    err = capsys.readouterr().err
    assert "unknown configuration key 'bogus'" in err
    assert f"{cfg}:2" in err


def test_bad_config_value_reports_the_line(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("t-max = soon\n")
    assert main(["simulate", "--config", str(cfg)]) == 2
    assert "bad value" in capsys.readouterr().err


def test_missing_config_file(capsys):
    assert main(["simulate", "--config", "/nonexistent.cfg"]) == 2
    assert "cannot read config file" in capsys.readouterr().err


def test_bad_choice_exits_through_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--rule", "sideways"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_autonomous_writes_the_region(tmp_path, capsys):
    out = tmp_path / "a" / "b"     # nested directories are created
    assert main(["autonomous", "--n", "6", "--seed", "1",
                 "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "region has 2 vertices" in stdout
    assert "t_r(0) = " in stdout

    region = json.loads((out / "region.json").read_text())
    assert set(region) == {"x", "h", "seen_white", "external_edges",
                           "tg", "tr", "origin", "opened"}
    assert region["x"] == 0
    assert len(region["h"]) == 2
    assert set(region["tr"]) <= set(region["origin"])

    steps = [json.loads(line)
             for line in (out / "steps.jsonl").read_text().splitlines()]
    assert [s["k"] for s in steps] == list(range(len(steps)))
    assert all(set(s) == {"k", "t", "edge", "case"} for s in steps)

    header = (out / "diagnostics.csv").read_text().splitlines()[0]
    assert header == "k,t,colour,cw,nu,eta,alpha"

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["files"] == ["diagnostics.csv", "region.json",
                                 "steps.jsonl"]
    assert manifest["results"]["h_size"] == 2


def test_autonomous_without_any_red_fails(capsys):
    assert main(["autonomous", "--n", "3", "--pw", "0", "--pr", "0"]) == 1
    assert "error:" in capsys.readouterr().out


def test_autonomous_budget_exhaustion_has_its_own_exit_code(capsys):
    assert main(["autonomous", "--n", "4", "--seed", "1",
                 "--budget", "1"]) == 4
    assert capsys.readouterr().out.startswith("budget exhausted")


def test_ponds_reruns_are_byte_identical(tmp_path, capsys):
    argv = ["ponds", "--n", "8", "--samples", "40", "--conn-samples", "2000",
            "--grid", "2,4", "--max-censored", "1.0", "--seed", "3",
            "--no-figures"]
    for name in ("one", "two"):
        assert main(argv + ["--out", str(tmp_path / name)]) == 0
    capsys.readouterr()
    for artefact in ("ponds.csv", "manifest.json"):
        assert (tmp_path / "one" / artefact).read_bytes() == \
            (tmp_path / "two" / artefact).read_bytes()


def test_ponds_renders_figures_next_to_the_csv(tmp_path, capsys):
    out = tmp_path / "report"
    assert main(["ponds", "--n", "8", "--samples", "30",
                 "--conn-samples", "1000", "--grid", "2,4",
                 "--max-censored", "1.0", "--coupling-samples", "20",
                 "--coupling-grid", "0.5,0.2,0.1", "--seed", "3",
                 "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "coupling: 0 nesting violations" in stdout
    for name in ("ponds.csv", "coupling.csv", "ponds.png", "coupling.png"):
        assert (out / name).stat().st_size > 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["results"]["coupling"]["nesting_violations"] == 0


def test_ponds_censoring_warning(tmp_path, capsys):
    # a tiny box censors most ponds; an impossible threshold must warn
    assert main(["ponds", "--n", "8", "--samples", "40",
                 "--conn-samples", "1000", "--grid", "2,4",
                 "--max-censored", "0.0", "--seed", "3",
                 "--no-figures", "--out", str(tmp_path / "p")]) == 3
    assert "censored rate" in capsys.readouterr().err


def test_tails_report(tmp_path, capsys):
    out = tmp_path / "tails"
    assert main(["tails", "--n", "8", "--samples", "300",
                 "--grid", "1,2,3,4", "--max-excluded", "0.1",
                 "--seed", "2", "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "geometric reference (1-0.2)^n" in stdout
    for name in ("tails.csv", "tails.png", "manifest.json"):
        assert (out / name).stat().st_size > 0


def test_tails_exclusion_warning(tmp_path, capsys):
    assert main(["tails", "--n", "8", "--samples", "300",
                 "--grid", "1,2,3,4", "--max-excluded", "-1",
                 "--seed", "2", "--no-figures",
                 "--out", str(tmp_path / "t")]) == 3
    assert "excluded rate" in capsys.readouterr().err


def test_tails_rejects_fixed_weight_graphs(tmp_path, capsys):
    graph_file = tmp_path / "g.txt"
    graph_file.write_text("0 1 0.5\n1 2 0.25\n")
    assert main(["tails", "--graph", str(graph_file),
                 "--samples", "10", "--grid", "1,2"]) == 2
    assert "fixed weights" in capsys.readouterr().err


def test_xi_report_and_condition_exit_codes(tmp_path, capsys):
    out = tmp_path / "xi"
    assert main(["xi", "--p", "0.02", "--pr", "0.3", "--samples", "2000",
                 "--r-max", "4", "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "drift condition (3)*xi < p_r holds" in stdout
    for name in ("xi.csv", "xi.png", "manifest.json"):
        assert (out / name).stat().st_size > 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["results"]["condition"]["holds"] is True

    assert main(["xi", "--p", "0.05", "--pr", "0.001",
                 "--samples", "2000", "--r-max", "4", "--no-figures",
                 "--out", str(tmp_path / "fails")]) == 3
    assert "FAILS" in capsys.readouterr().out


def test_verify_command(tmp_path, capsys):
    assert main(["verify", "--cases", "8", "--trials", "2"]) == 0
    assert "checks run: 24" in capsys.readouterr().out

    snap = tmp_path / "fail.json"
    assert main(["verify", "--cases", "4", "--trials", "2",
                 "--inject-fault", "1e-6", "--snapshot", str(snap)]) == 1
    capsys.readouterr()
    assert snap.exists()

    assert main(["verify", "--suites", "invasion,nope"]) == 2
    assert "unknown suites" in capsys.readouterr().err
