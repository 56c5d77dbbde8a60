import io

import numpy as np
import pytest
from hypothesis import strategies as st

from irls.graph import WeightedGraph, load_edge_list


def graph_from_text(text: str) -> WeightedGraph:
    return load_edge_list(io.StringIO(text))


def two_triangles_bridge() -> WeightedGraph:
    # nodes 0-2 and 3-5 form triangles, bridge 2-3
    u = [0, 0, 1, 3, 3, 4, 2]
    v = [1, 2, 2, 4, 5, 5, 3]
    return WeightedGraph.from_edges(6, u, v)


def two_cliques_bridge(k: int = 4) -> WeightedGraph:
    u, v = [], []
    for off in (0, k):
        for i in range(k):
            for j in range(i + 1, k):
                u.append(off + i)
                v.append(off + j)
    u.append(k - 1)
    v.append(k)
    return WeightedGraph.from_edges(2 * k, u, v)


def random_graph(rng: np.random.Generator, n: int, p: float, weighted: bool = False) -> WeightedGraph:
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    w = rng.uniform(0.1, 3.0, keep.sum()) if weighted else None
    return WeightedGraph.from_edges(n, iu[keep], ju[keep], w)


def planted_blocks(rng, sizes, p_in, p_out):
    n = sum(sizes)
    block = np.repeat(np.arange(len(sizes)), sizes)
    iu, ju = np.triu_indices(n, 1)
    prob = np.where(block[iu] == block[ju], p_in, p_out)
    keep = rng.random(len(iu)) < prob
    return WeightedGraph.from_edges(n, iu[keep], ju[keep]), block


@st.composite
def graphs(draw, min_n=2, max_n=30, weighted=True):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.floats(0.05, 0.9))
    return random_graph(np.random.default_rng(seed), n, p, weighted)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
