from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from lapmoments.graph import Graph, connected_components, generate

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"
P_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)


def er_family(count: int, nmax: int, seed0: int = 0, nmin: int = 1):
    """``count`` deterministic ER graphs, n in [nmin, nmax], p cycling over the grid."""
    rng = np.random.default_rng(seed0)
    out = []
    for k in range(count):
        n = int(rng.integers(nmin, nmax + 1))
        out.append(generate("er", n, P_GRID[k % len(P_GRID)], seed=seed0 * 100_000 + k))
    return out


def connected_family(count: int, nmax: int, seed0: int = 0):
    out, k = [], 0
    rng = np.random.default_rng(seed0)
    while len(out) < count:
        n = int(rng.integers(3, nmax + 1))
        g = generate("er", n, P_GRID[k % len(P_GRID)], seed=seed0 * 100_000 + k)
        k += 1
        if connected_components(g)[0] == 1:
            out.append(g)
    return out


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


@pytest.fixture
def ring12() -> Graph:
    return generate("ring", 12)


@pytest.fixture
def two_c6() -> Graph:
    return Graph.from_edges(12, [(i, (i + 1) % 6) for i in range(6)] + [(6 + i, 6 + (i + 1) % 6) for i in range(6)])


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import summary_lines

    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
