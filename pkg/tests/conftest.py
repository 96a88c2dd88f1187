from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from gendegree.graph import Graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 9, connected: bool = False) -> Graph:
    """Random simple graphs; ``connected`` threads a random spanning path first."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    adj = np.zeros((n, n), dtype=np.int64)
    for (i, j), on in zip(pairs, mask):
        if on:
            adj[i, j] = adj[j, i] = 1
    if connected:
        order = draw(st.permutations(range(n)))
        for a, b in zip(order[:-1], order[1:]):
            adj[a, b] = adj[b, a] = 1
    return Graph([str(k + 1) for k in range(n)], adj)


epsilons = st.sampled_from([0.01, 0.1, 0.5, 1.0, 3.0, 10.0])


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


# -- acceptance summary --------------------------------------------------------

_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    _ACCEPTANCE.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in _ACCEPTANCE:
        terminalreporter.write_line(f"{verdict}  {name}")
