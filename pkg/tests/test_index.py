"""Tests for the precomputed walk index."""

from pathlib import Path
import sys

import numpy as np
import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from core.approx import IndexedWalks, FreshWalks, build_index, load_index, save_index, speedppr_query
from core.errors import IndexFormatError, IndexMismatchError
from core.graph.generators import five_node_graph, from_pairs, random_digraph
from core.oracle import exact_ppr
from core.schemas import QueryConfig
from core.scoring import error_report

ALPHA = 0.2


def test_five_node_slices() -> None:
    """Every node stores exactly ``d_v`` endpoints."""

    index = build_index(five_node_graph(), ALPHA, seed=42)
    assert index.total_walks == 13
    assert np.diff(index.offsets).tolist() == [2, 4, 2, 3, 2]
    assert np.all(index.endpoints < 5)


def test_dead_ends_store_nothing() -> None:
    """Dead-ends get an empty slice."""

    graph = random_digraph(100, 4, seed=2, dead_end_fraction=0.2)
    index = build_index(graph, ALPHA, seed=1)
    assert index.total_walks == graph.m
    for v in graph.dead_ends:
        assert index.walks_of(int(v)).shape[0] == 0


def test_index_walks_restart_from_origin() -> None:
    graph = from_pairs([(0, 1)], n=3)
    index = build_index(graph, 0.5, seed=0)
    assert set(index.walks_of(0).tolist()) <= {0, 1}


def test_same_seed_gives_identical_files(tmp_path: Path) -> None:
    """Same graph, alpha and seed give byte-identical files."""

    graph = random_digraph(200, 5, seed=0)
    a, b = tmp_path / "a.idx", tmp_path / "b.idx"
    save_index(build_index(graph, ALPHA, seed=7), a)
    save_index(build_index(graph, ALPHA, seed=7), b)
    assert a.read_bytes() == b.read_bytes()


def test_round_trip(tmp_path: Path) -> None:
    """Verify save/load keeps every field."""

    graph = random_digraph(50, 3, seed=5, dead_end_fraction=0.1)
    index = build_index(graph, ALPHA, seed=3)
    path = tmp_path / "g.idx"
    written = save_index(index, path)
    assert written == index.nbytes == path.stat().st_size
    loaded = load_index(path, graph)
    assert (loaded.alpha, loaded.seed, loaded.rng_id) == (index.alpha, index.seed, index.rng_id)
    assert np.array_equal(loaded.offsets, index.offsets)
    assert np.array_equal(loaded.endpoints, index.endpoints)
    save_index(loaded, tmp_path / "again.idx")
    assert (tmp_path / "again.idx").read_bytes() == path.read_bytes()


def test_truncated_file_rejected(tmp_path: Path) -> None:
    """A short file raises :class:`IndexFormatError`."""

    path = tmp_path / "g.idx"
    save_index(build_index(five_node_graph(), ALPHA, seed=0), path)
    path.write_bytes(path.read_bytes()[:-2])
    with pytest.raises(IndexFormatError):
        load_index(path)
    path.write_bytes(b"PPRW")
    with pytest.raises(IndexFormatError):
        load_index(path)


def test_foreign_file_rejected(tmp_path: Path) -> None:
    """Wrong magic bytes raise :class:`IndexFormatError`."""

    path = tmp_path / "g.idx"
    path.write_bytes(b"NOPE" + bytes(60))
    with pytest.raises(IndexFormatError, match="magic"):
        load_index(path)


def test_index_for_other_graph_rejected(tmp_path: Path) -> None:
    path = tmp_path / "g.idx"
    save_index(build_index(five_node_graph(), ALPHA, seed=0), path)
    with pytest.raises(IndexFormatError):
        load_index(path, random_digraph(5, 2, seed=1))


def test_alpha_mismatch_rejected() -> None:
    """An index built for another ``alpha`` is refused."""

    graph = five_node_graph()
    index = build_index(graph, ALPHA, seed=0)
    with pytest.raises(IndexMismatchError):
        speedppr_query(graph, 0, QueryConfig(alpha=0.15, epsilon=0.5), index=index)


def test_indexed_walks_serve_prefix_then_top_up() -> None:
    graph = random_digraph(30, 3, seed=4, dead_end_fraction=0.2)
    index = build_index(graph, ALPHA, seed=9)
    source = IndexedWalks(index, FreshWalks(graph, ALPHA, np.random.default_rng(0)))
    v = int(np.flatnonzero(graph.out_degree >= 2)[0])
    terminals, fresh = source.sample(np.array([v]), np.array([2]), 0)
    assert fresh == 0
    assert terminals.tolist() == index.walks_of(v)[:2].tolist()
    dead = int(graph.dead_ends[0])
    terminals, fresh = source.sample(np.array([v, dead]), np.array([1, 1]), 0)
    assert fresh == 1
    assert terminals[0] == index.walks_of(v)[0]


def test_indexed_query_uses_index() -> None:
    graph = random_digraph(100, 4, seed=3)
    index = build_index(graph, ALPHA, seed=1)
    result = speedppr_query(graph, 0, QueryConfig(alpha=ALPHA, epsilon=0.5, seed=0), index=index)
    assert result.algorithm == "speedppr-index"
    assert result.details["fresh_walks"] == 0
    assert result.estimates.sum() == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("epsilon", [0.1, 0.5])
def test_one_index_serves_every_epsilon(epsilon: float) -> None:
    """One index keeps the relative-error guarantee for every ``epsilon``."""

    graph = random_digraph(100, 5, seed=21)
    index = build_index(graph, ALPHA, seed=11)
    truth = exact_ppr(graph, 0, ALPHA)
    mu = 1.0 / graph.n
    ok = 0
    for seed in range(50):
        cfg = QueryConfig(alpha=ALPHA, epsilon=epsilon, mu=mu, seed=seed)
        result = speedppr_query(graph, 0, cfg, index=index)
        ok += error_report(result, truth, epsilon, mu).violated_nodes == 0
    assert ok / 50 >= 0.95
