from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph_from_text, graphs
from irls.errors import IsolatedSeed
from irls.graph import WeightedGraph, induced_subgraph
from irls.sampling import SamplingParams, bfs_sample, random_walk_trim, walk_mass


def hop_ball(g, seed, steps):
    dist = {seed: 0}
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        if dist[x] == steps:
            continue
        for y in g.neighbors(x)[0]:
            y = int(y)
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return sorted(dist)


def star(leaves):
    return WeightedGraph.from_edges(leaves + 1, [0] * leaves, list(range(1, leaves + 1)))


def test_path_graph_three_steps():
    g = graph_from_text("\n".join(f"{a} {b}" for a, b in zip("abcdefghi", "bcdefghij")))
    s = bfs_sample(g, g.index_of("a"), SamplingParams(bfs_steps=3, inward_threshold=0.0))
    assert sorted(s.subgraph.labels) == ["a", "b", "c", "d"]
    assert s.seed_original == g.index_of("a")


def test_isolated_seed():
    g = graph_from_text("a b\nc")
    with pytest.raises(IsolatedSeed):
        bfs_sample(g, g.index_of("c"))


def test_small_ball_returned_whole():
    g = graph_from_text("a b\nb c\nc d\na c")
    s = bfs_sample(g, 0, SamplingParams(inward_threshold=0.0, max_nodes=100))
    assert s.subgraph == g


def test_trim_star_ties_go_to_low_indices():
    g = star(5)
    assert random_walk_trim(g, 0, 3, 1).tolist() == [0, 1, 2]
    assert random_walk_trim(g, 0, 10, 1).tolist() == list(range(6))


def test_trim_keeps_seed_without_mass():
    # after one step all mass has left the seed
    g = star(5)
    assert walk_mass(g, 0, 1)[0] == 0.0
    assert 0 in random_walk_trim(g, 0, 2, 1)


def test_inward_threshold_filters_outer_rings():
    # seed a with neighbours b, c; d hangs off b with most weight elsewhere
    g = graph_from_text("a b\na c\nb c\nb d 1\nd e 9\n")
    tight = bfs_sample(g, 0, SamplingParams(inward_threshold=0.5))
    loose = bfs_sample(g, 0, SamplingParams(inward_threshold=0.0))
    assert "d" not in tight.subgraph.labels
    assert "d" in loose.subgraph.labels


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=200, weighted=False), st.integers(1, 4), st.data())
def test_matches_plain_bfs_without_filtering(g, steps, data):
    seed = data.draw(st.integers(0, g.n - 1))
    if g.degrees[seed] == 0:
        return
    s = bfs_sample(g, seed, SamplingParams(bfs_steps=steps, inward_threshold=0.0, max_nodes=10**9))
    assert s.to_original.tolist() == hop_ball(g, seed, steps)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=120), st.floats(0, 1), st.integers(1, 60), st.data())
def test_sample_postconditions(g, theta, n_max, data):
    seed = data.draw(st.integers(0, g.n - 1))
    if g.degrees[seed] == 0:
        return
    s = bfs_sample(g, seed, SamplingParams(inward_threshold=theta, max_nodes=n_max))
    nodes = set(s.to_original.tolist())
    assert s.seed_original == seed
    assert nodes >= {seed, *g.neighbors(seed)[0].tolist()}
    assert len(nodes) == len(s.to_original)
    assert len(nodes) <= max(n_max, 1 + len(g.neighbors(seed)[0]))
    direct, _ = induced_subgraph(g, s.to_original)
    assert direct == s.subgraph


def test_params_validation():
    with pytest.raises(ValueError):
        SamplingParams(inward_threshold=1.5)
    with pytest.raises(ValueError):
        SamplingParams(bfs_steps=0)
