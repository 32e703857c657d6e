"""Tests for the dense PPR oracle."""

from pathlib import Path
import sys

import numpy as np
import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from core.errors import OracleGuardError
from core.graph.generators import five_node_graph, random_digraph, self_loop, two_cycle
from core.oracle import exact_ppr
from core.oracle.dense import dense_transition, power_series, residual_l1
from sim.records import read_ppr

GOLDEN = Path(__file__).resolve().parent / "data" / "five_node_s0.csv"


def test_self_loop_keeps_all_mass() -> None:
    """A self-loop source keeps every unit of mass."""

    for alpha in (0.05, 0.2, 0.9):
        assert exact_ppr(self_loop(), 0, alpha).pi.tolist() == pytest.approx([1.0])


def test_two_cycle_closed_form() -> None:
    """Two-node cycle: ``π = (1/(2−α), (1−α)/(2−α))``."""

    pi = exact_ppr(two_cycle(), 0, 0.2).pi
    assert pi[0] == pytest.approx(5 / 9, abs=1e-15)
    assert pi[1] == pytest.approx(4 / 9, abs=1e-15)


def test_five_node_matches_golden_file() -> None:
    """Verify the frozen five-node vector."""

    golden = read_ppr(GOLDEN)
    pi = exact_ppr(five_node_graph(), 0, 0.2).pi
    assert np.max(np.abs(pi - golden)) <= 1e-15
    assert np.allclose(golden * 773, [227, 210, 180, 114, 42], atol=1e-12)


def test_dead_end_rows_point_at_source() -> None:
    """Dead-end rows of ``P`` send all mass to the source."""

    graph = random_digraph(12, 2, seed=4, dead_end_fraction=0.4)
    P = dense_transition(graph, 3)
    for v in graph.dead_ends:
        assert P[v].tolist() == [1.0 if u == 3 else 0.0 for u in range(graph.n)]
    assert np.allclose(P.sum(axis=1), 1.0)


@pytest.mark.parametrize("seed", range(5))
def test_residual_and_normalization(seed: int) -> None:
    """The solve leaves a tiny residual and sums to one."""

    graph = random_digraph(40, 3, seed=seed, dead_end_fraction=0.15)
    result = exact_ppr(graph, 0, 0.2)
    assert np.all(result.pi >= 0)
    assert abs(result.pi.sum() - 1.0) <= 1e-10
    assert residual_l1(graph, result) <= 1e-10


@pytest.mark.parametrize("terms", [0, 3, 10, 40])
def test_power_series_gap(terms: int) -> None:
    """Truncated power series trail the solve by ``(1−α)^(terms+1)``."""

    graph = five_node_graph()
    truth = exact_ppr(graph, 0, 0.2).pi
    partial = power_series(graph, 0, 0.2, terms)
    gap = float(np.abs(truth - partial).sum())
    assert gap == pytest.approx(0.8 ** (terms + 1), abs=1e-12)


def test_guard_rejects_large_graphs() -> None:
    """Graphs past the node guard raise :class:`OracleGuardError`."""

    with pytest.raises(OracleGuardError):
        exact_ppr(random_digraph(30, 2, seed=0), 0, 0.2, max_nodes=20)
