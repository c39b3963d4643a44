from __future__ import annotations

import sys
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from tk5cert.graph import Graph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).parent / "data"

# criterion number -> (passed, summary); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8, p: float | None = None) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if p is None:
        mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    else:
        mask = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
        mask = [x < p for x in mask]
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def G(h: nx.Graph) -> Graph:
    return Graph.from_networkx(nx.convert_node_labels_to_integers(h, ordering="sorted"))


@pytest.fixture(scope="session")
def atlas7() -> list[Graph]:
    return [Graph.from_networkx(h) for h in nx.graph_atlas_g()[1:]]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, summary = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {summary}")
