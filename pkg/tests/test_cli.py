"""Tests for the command-line front end."""

from pathlib import Path
import shutil
import sys

import numpy as np
import pandas as pd
import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from cli.main import main
from core.approx import load_index
from sim.records import read_ppr

DATA = Path(__file__).resolve().parent / "data"


@pytest.fixture
def graph_file(tmp_path: Path) -> Path:
    path = tmp_path / "five.txt"
    shutil.copy(DATA / "five_node.txt", path)
    return path


def test_query_writes_node_ppr_csv(graph_file: Path, tmp_path: Path) -> None:
    out = tmp_path / "ppr.csv"
    code = main(["query", "--graph", str(graph_file), "--algo", "powerpush", "--source", "0", "--out", str(out)])
    assert code == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["node", "ppr"]
    assert len(frame) == 5
    golden = read_ppr(DATA / "five_node_s0.csv")
    assert np.abs(frame["ppr"].to_numpy() - golden).sum() <= 1e-8


def test_query_to_stdout(graph_file: Path, capsys) -> None:
    assert main(["query", "--graph", str(graph_file), "--algo", "powitr", "--source", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "node,ppr"
    assert len(lines) == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["query", "--algo", "speedppr", "--source", "0"],
        ["query", "--algo", "bepi", "--source", "0"],
        ["query", "--algo", "powerpush"],
        ["query", "--algo", "powerpush", "--source", "0", "--random-sources", "2"],
        ["query", "--algo", "powerpush", "--source", "0", "--alpha", "1.5"],
        ["build-index"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_one(graph_file: Path, argv: list) -> None:
    assert main(argv[:1] + ["--graph", str(graph_file)] + argv[1:]) == 1


def test_missing_graph_flag_exits_one() -> None:
    assert main(["query", "--algo", "powerpush", "--source", "0"]) == 1


def test_malformed_graph_exits_two(tmp_path: Path, capsys) -> None:
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\nx y\n", encoding="utf-8")
    assert main(["query", "--graph", str(bad), "--algo", "powerpush", "--source", "0"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_source_out_of_range_exits_two(graph_file: Path) -> None:
    assert main(["query", "--graph", str(graph_file), "--algo", "powerpush", "--source", "9"]) == 2


def test_missing_file_exits_two(tmp_path: Path) -> None:
    assert main(["query", "--graph", str(tmp_path / "nope.txt"), "--algo", "powitr", "--source", "0"]) == 2


def test_build_index_is_deterministic(graph_file: Path, tmp_path: Path) -> None:
    a, b = tmp_path / "a.idx", tmp_path / "b.idx"
    for out in (a, b):
        argv = ["build-index", "--graph", str(graph_file), "--alpha", "0.2", "--seed", "42", "--out", str(out)]
        assert main(argv) == 0
    assert a.read_bytes() == b.read_bytes()
    assert load_index(a).total_walks == 13


def test_index_alpha_mismatch_exits_two(graph_file: Path, tmp_path: Path) -> None:
    index = tmp_path / "g.idx"
    assert main(["build-index", "--graph", str(graph_file), "--alpha", "0.2", "--out", str(index)]) == 0
    argv = [
        "query", "--graph", str(graph_file), "--algo", "speedppr", "--epsilon", "0.5",
        "--alpha", "0.15", "--index", str(index), "--source", "0",
    ]
    assert main(argv) == 2


def test_index_for_other_graph_exits_two(graph_file: Path, tmp_path: Path) -> None:
    other = tmp_path / "other.txt"
    other.write_text("0 1\n1 2\n2 0\n", encoding="utf-8")
    index = tmp_path / "other.idx"
    assert main(["build-index", "--graph", str(other), "--out", str(index)]) == 0
    argv = [
        "query", "--graph", str(graph_file), "--algo", "speedppr", "--epsilon", "0.5",
        "--index", str(index), "--source", "0",
    ]
    assert main(argv) == 2


def test_speedppr_runs_are_reproducible(graph_file: Path, tmp_path: Path) -> None:
    outputs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        argv = [
            "query", "--graph", str(graph_file), "--algo", "speedppr", "--epsilon", "0.5",
            "--seed", "7", "--source", "0", "--out", str(out),
        ]
        assert main(argv) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_random_sources_write_one_file_each(graph_file: Path, tmp_path: Path) -> None:
    out = tmp_path / "ppr.csv"
    stats = tmp_path / "stats.csv"
    argv = [
        "query", "--graph", str(graph_file), "--algo", "fwdpush-fifo", "--random-sources", "3",
        "--seed", "1", "--out", str(out), "--stats", str(stats),
    ]
    assert main(argv) == 0
    written = sorted(p.name for p in tmp_path.glob("ppr_s*.csv"))
    assert len(written) == 3
    frame = pd.read_csv(stats)
    assert len(frame) == 3
    assert sorted(f"ppr_s{s}.csv" for s in frame["source"]) == written


def test_clean_then_query_from_cache(tmp_path: Path) -> None:
    edges = tmp_path / "raw.txt"
    edges.write_text("# comment\n10 20\n20 30\n30 10\n", encoding="utf-8")
    cache = tmp_path / "raw.pprg"
    assert main(["clean", "--graph", str(edges), "--out", str(cache)]) == 0
    assert cache.read_bytes()[:4] == b"PPRG"
    ids = pd.read_csv(tmp_path / "raw.pprg.ids.csv")
    assert ids["original_id"].tolist() == [10, 20, 30]
    out = tmp_path / "ppr.csv"
    assert main(["query", "--graph", str(cache), "--algo", "simfwdpush", "--source", "0", "--out", str(out)]) == 0
    assert read_ppr(out).sum() == pytest.approx(1.0, abs=1e-7)


def test_groundtruth_matches_golden(graph_file: Path, tmp_path: Path) -> None:
    out = tmp_path / "truth.csv"
    assert main(["groundtruth", "--graph", str(graph_file), "--source", "0", "--out", str(out)]) == 0
    assert np.abs(read_ppr(out) - read_ppr(DATA / "five_node_s0.csv")).sum() <= 1e-12


def test_bench_with_plan_and_db(graph_file: Path, tmp_path: Path) -> None:
    plan = tmp_path / "plan.yaml"
    plan.write_text("algorithms: [powerpush, speedppr]\nlambdas: [1.0e-6]\nepsilons: [0.5]\nseeds: [0]\n", encoding="utf-8")
    out = tmp_path / "bench"
    db = tmp_path / "rows.db"
    argv = [
        "bench", "--graph", str(graph_file), "--plan", str(plan), "--source", "0",
        "--out", str(out), "--db", f"sqlite:///{db}", "--name", "five", "--workers", "2",
    ]
    assert main(argv) == 0
    summary = pd.read_csv(out / "five_sweep.csv")
    assert sorted(summary["algo"]) == ["powerpush", "speedppr"]
    assert (out / "five_powerpush_1e-06.csv").exists()
    assert db.exists()


def test_bench_needs_plan_or_algo(graph_file: Path, tmp_path: Path) -> None:
    assert main(["bench", "--graph", str(graph_file), "--source", "0", "--out", str(tmp_path)]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["query", "--algo", "powerpush", "--source", "0"],
        ["groundtruth", "--source", "0"],
        ["bench", "--algo", "powerpush", "--source", "0", "--out", "{tmp}"],
    ],
)
def test_zero_alpha_exits_two(graph_file: Path, tmp_path: Path, argv: list) -> None:
    """With ``alpha = 0`` nothing is ever absorbed, so every command refuses it."""

    argv = [a.replace("{tmp}", str(tmp_path / "bench")) for a in argv]
    assert main(argv[:1] + ["--graph", str(graph_file), "--alpha", "0"] + argv[1:]) == 2


def test_query_stats_include_checkpoint_series(graph_file: Path, tmp_path: Path) -> None:
    """``--checkpoint-every`` sets the cadence of the per-query ``pushes,r_sum,time_ns`` series."""

    stats = tmp_path / "stats.csv"
    argv = [
        "query", "--graph", str(graph_file), "--algo", "powerpush", "--source", "0",
        "--checkpoint-every", "10", "--stats", str(stats),
    ]
    assert main(argv) == 0
    series = pd.read_csv(tmp_path / "stats_checkpoints.csv")
    assert list(series.columns) == ["pushes", "r_sum", "time_ns"]
    assert len(series) > 1
    assert series["pushes"].is_monotonic_increasing
    assert (series["pushes"] >= 10).all()
    assert len(pd.read_csv(stats)) == 1


def test_speedppr_stats_have_no_checkpoint_series(graph_file: Path, tmp_path: Path) -> None:
    stats = tmp_path / "stats.csv"
    argv = [
        "query", "--graph", str(graph_file), "--algo", "speedppr", "--epsilon", "0.5",
        "--source", "0", "--stats", str(stats),
    ]
    assert main(argv) == 0
    assert not (tmp_path / "stats_checkpoints.csv").exists()


def test_build_index_reports_stats(graph_file: Path, tmp_path: Path, capsys) -> None:
    out = tmp_path / "g.idx"
    assert main(["build-index", "--graph", str(graph_file), "--seed", "3", "--out", str(out)]) == 0
    fields = dict(item.split("=") for item in capsys.readouterr().out.split())
    assert fields["n"] == "5"
    assert fields["total_walks"] == "13"
    assert fields["seed"] == "3"
    assert int(fields["bytes"]) == out.stat().st_size
    assert "seconds" in fields
