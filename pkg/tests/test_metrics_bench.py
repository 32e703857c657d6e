"""Tests for error metrics, ground truth and the sweep harness."""

from pathlib import Path
import sys

import numpy as np
import pandas as pd
import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from core.engines.power_iteration import iterate_power
from core.graph.generators import five_node_graph, random_digraph
from core.oracle import exact_ppr
from core.registry import run_query
from core.schemas import QueryConfig, SweepPlan
from core.scoring import error_report, ground_truth, l1_error
from sim.records import QueryRecord, SweepRow, write_query_records
from sim.store import ResultStore
from sim.sweep import median_source, run_sweep, sample_sources, write_sweep

ALPHA = 0.2


def test_l1_error_examples() -> None:
    truth = exact_ppr(five_node_graph(), 0, ALPHA)
    assert l1_error(truth, truth) == 0.0
    assert l1_error(np.zeros(5), truth) == pytest.approx(1.0, abs=1e-12)


def test_l1_error_of_power_iteration_steps() -> None:
    graph = five_node_graph()
    truth = exact_ppr(graph, 0, ALPHA)
    for j, state in enumerate(iterate_power(graph, 0, ALPHA), start=1):
        assert l1_error(state.reserve, truth) == pytest.approx(0.8**j, abs=1e-10)
        if j == 20:
            break


def test_l1_error_rejects_mismatch() -> None:
    graph = five_node_graph()
    with pytest.raises(ValueError):
        l1_error(np.zeros(4), np.zeros(5))
    with pytest.raises(ValueError):
        l1_error(exact_ppr(graph, 0, ALPHA), exact_ppr(graph, 1, ALPHA))


def test_error_report_counts_violations() -> None:
    truth = np.array([0.5, 0.3, 0.15, 0.05])
    est = np.array([0.5, 0.2, 0.16, 0.14])
    report = error_report(est, truth, epsilon=0.2, mu=0.1)
    assert report.num_nodes_above_mu == 3
    assert report.violated_nodes == 1
    assert report.max_rel_error_above_mu == pytest.approx(1 / 3)
    assert report.l1_error == pytest.approx(0.2)
    assert report.violated_nodes <= report.num_nodes_above_mu


def test_ground_truth_matches_oracle() -> None:
    graph = random_digraph(60, 4, seed=1, dead_end_fraction=0.1)
    truth = ground_truth(graph, 0, ALPHA)
    assert truth.details["oracle_l1"] <= 1e-12
    assert truth.estimates.sum() == pytest.approx(1.0, abs=1e-12)
    again = ground_truth(graph, 0, ALPHA)
    assert np.array_equal(truth.estimates, again.estimates)


def test_sample_sources_reproducible() -> None:
    first = sample_sources(1000, 30, seed=5)
    assert first == sample_sources(1000, 30, seed=5)
    assert len(set(first)) == 30
    assert all(0 <= s < 1000 for s in first)
    with pytest.raises(ValueError):
        sample_sources(3, 4, seed=0)


def test_single_cell_sweep() -> None:
    graph = five_node_graph()
    plan = SweepPlan(algorithms=["powerpush"], lambdas=[1e-6])
    result = run_sweep(graph, [0], plan, "five")
    assert len(result.rows) == 1
    row = result.rows[0]
    assert (row.source, row.algo, row.param) == (0, "powerpush", 1e-6)
    assert row.l1_error <= row.achieved_r_sum + 1e-9


def test_unknown_algorithm_rejected() -> None:
    with pytest.raises(KeyError):
        run_sweep(five_node_graph(), [0], SweepPlan(algorithms=["bepi"], lambdas=[1e-4]))


def test_pushes_grow_as_lambda_shrinks() -> None:
    graph = random_digraph(500, 5, seed=3)
    plan = SweepPlan(algorithms=["fwdpush-fifo", "powerpush"], lambdas=[1e-2, 1e-4, 1e-6, 1e-8], workers=4)
    result = run_sweep(graph, [0], plan, "rand")
    for algo in plan.algorithms:
        rows = sorted((r for r in result.rows if r.algo == algo), key=lambda r: -r.param)
        pushes = [r.edge_pushes for r in rows]
        assert pushes == sorted(pushes)
        assert all(r.l1_error <= r.achieved_r_sum + 1e-9 for r in rows)


def test_approximate_sweep_over_seeds() -> None:
    graph = random_digraph(80, 4, seed=2)
    plan = SweepPlan(algorithms=["speedppr", "speedppr-index"], epsilons=[0.5], seeds=[0, 1, 2], workers=2)
    result = run_sweep(graph, [0, 5], plan, "rand")
    assert len(result.rows) == 2 * 2 * 3
    assert all(r.walks > 0 for r in result.rows)
    assert not result.checkpoints


def test_median_source() -> None:
    rows = [
        SweepRow("g", s, "powerpush", 1e-4, 0, t, 0, 0, 0.0, 0.0, 0.0, 0, "h")
        for s, t in [(4, 30), (7, 10), (9, 20)]
    ]
    assert median_source(rows) == 9


def test_write_sweep_outputs(tmp_path: Path) -> None:
    graph = random_digraph(300, 5, seed=4)
    plan = SweepPlan(algorithms=["powerpush"], lambdas=[1e-6], checkpoint_every=graph.m)
    result = run_sweep(graph, [0, 1, 2], plan, "rand")
    paths = write_sweep(result, tmp_path)
    assert [p.name for p in paths] == ["rand_sweep.csv", "rand_powerpush_1e-06.csv"]
    summary = pd.read_csv(paths[0])
    assert list(summary.columns[:4]) == ["graph", "source", "algo", "param"]
    assert len(summary) == 3
    series = pd.read_csv(paths[1])
    assert list(series.columns) == ["pushes", "r_sum", "time_ns"]
    assert len(series) > 0
    assert series["pushes"].is_monotonic_increasing


def test_result_store_round_trip() -> None:
    graph = five_node_graph()
    result = run_sweep(graph, [0, 1], SweepPlan(algorithms=["powitr"], lambdas=[1e-4]), "five")
    store = ResultStore("sqlite://")
    assert store.append(result.rows) == 2
    assert store.rows("five") == result.rows
    assert store.rows("other") == []


def test_query_records_csv(tmp_path: Path) -> None:
    graph = five_node_graph()
    result = run_query("powerpush", graph, 0, QueryConfig(alpha=ALPHA, lambda_=1e-6))
    record = QueryRecord.from_result(result, 1e-6)
    path = write_query_records(tmp_path / "stats.csv", [record])
    frame = pd.read_csv(path)
    assert frame.loc[0, "algorithm"] == "powerpush"
    assert frame.loc[0, "edge_pushes"] == result.pushes
    assert frame.loc[0, "achieved_r_sum"] <= 1e-6
