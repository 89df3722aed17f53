"""
Shared test fixtures and configuration for polarisation_likes tests.
"""

import networkx as nx
import numpy as np
import pytest

from polarisation_likes.calibration import default_electorates, default_politicians
from polarisation_likes.econometrics import PanelRow
from polarisation_likes.spatial import Politician


@pytest.fixture
def two_triangles():
    """Two triangles joined by a single bridge edge (2, 3)."""
    graph = nx.Graph()
    graph.add_edges_from([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    return graph


@pytest.fixture
def two_cliques():
    """Two disjoint 5-cliques on nodes 0..4 and 5..9."""
    graph = nx.complete_graph(5)
    graph.add_edges_from((u + 5, v + 5) for u, v in nx.complete_graph(5).edges())
    return graph


@pytest.fixture
def calibrated_politicians():
    """The bundled 28 politicians split into three coalitions."""
    return default_politicians()


@pytest.fixture
def electorates():
    """Empirical electorate and its two normal counterparts."""
    return default_electorates()


@pytest.fixture
def toy_politicians():
    """Four politicians, two per coalition."""
    return [
        Politician(id="A", mu=1.5, sigma=0.5, coalition=0),
        Politician(id="B", mu=2.0, sigma=0.5, coalition=0),
        Politician(id="C", mu=4.0, sigma=0.5, coalition=1),
        Politician(id="D", mu=4.5, sigma=0.5, coalition=1),
    ]


@pytest.fixture
def planted_panel():
    """
    Balanced synthetic panel generated from the panel equation.

    votes = α_i + α_t + 2·opp + 1·following - 0.3·likes + 1.5·likes·opp
            + 0.01·likes² - 0.02·likes²·opp
    """
    rng = np.random.default_rng(7)
    ids = [f"P{k}" for k in range(6)]
    coalition = {pid: k % 2 for k, pid in enumerate(ids)}
    entity_effect = {pid: float(k) for k, pid in enumerate(ids)}
    period_effect = {"t1": 0.0, "t2": 3.0, "t3": -1.0}
    following = {(i, j): int(rng.integers(0, 2)) for i in ids for j in ids if i != j}

    rows = []
    for t, alpha_t in period_effect.items():
        for i in ids:
            for j in ids:
                if i == j:
                    continue
                likes = int(rng.integers(0, 20))
                opp = int(coalition[i] != coalition[j])
                votes = (10 + entity_effect[i] + alpha_t + 2 * opp + following[(i, j)]
                         - 0.3 * likes + 1.5 * likes * opp
                         + 0.01 * likes ** 2 - 0.02 * likes ** 2 * opp)
                rows.append(PanelRow(i=i, j=j, t=t, likes=likes, votes=votes,
                                     opponents=opp, following=following[(i, j)]))
    return rows


@pytest.fixture
def panel_files(tmp_path):
    """Small two-period panel written as the four input CSVs."""
    (tmp_path / "coalitions.csv").write_text(
        "politician_id,coalition\nA,left\nB,left\nC,right\nD,right\n", encoding="utf-8"
    )
    likes = ["period,liker_id,target_id,likes"]
    votes = ["period,i,j,votes_in_favor"]
    values = {"A": 1, "B": 2, "C": 3, "D": 4}
    for t, shift in (("2019", 0), ("2020", 1)):
        for i in values:
            for j in values:
                if i == j:
                    continue
                likes.append(f"{t},{i},{j},{values[i] * values[j] + shift}")
                if (i, j) != ("A", "D"):
                    votes.append(f"{t},{i},{j},{(values[i] + values[j]) % 5 + shift}")
    (tmp_path / "likes.csv").write_text("\n".join(likes) + "\n", encoding="utf-8")
    (tmp_path / "votes.csv").write_text("\n".join(votes) + "\n", encoding="utf-8")
    (tmp_path / "following.csv").write_text("i,j,follows\nA,B,1\nC,D,1\nA,C,0\n", encoding="utf-8")
    return {
        "likes": tmp_path / "likes.csv",
        "votes": tmp_path / "votes.csv",
        "following": tmp_path / "following.csv",
        "coalitions": tmp_path / "coalitions.csv",
    }


# Configure pytest markers
def pytest_configure(config):
    """Configure custom pytest markers."""
    config.addinivalue_line("markers", "unit: Unit tests")
    config.addinivalue_line("markers", "integration: Integration tests")
    config.addinivalue_line("markers", "slow: Slow tests that take more than a few seconds")


def pytest_collection_modifyitems(config, items):
    """Automatically mark tests based on their location and name."""
    for item in items:
        # Mark integration tests
        if "test_integration" in item.nodeid or "test_cli" in item.nodeid:
            item.add_marker(pytest.mark.integration)

        # Mark slow tests
        if "large" in item.name.lower() or "performance" in item.name.lower():
            item.add_marker(pytest.mark.slow)

        # Mark remaining tests as unit tests if not already marked
        if not any(mark.name in ['integration', 'slow'] for mark in item.iter_markers()):
            item.add_marker(pytest.mark.unit)
