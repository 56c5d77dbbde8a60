import io
import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irls.synth import (
    PRESETS,
    GeneratorSpec,
    LayerSpec,
    _decode_pairs,
    dump_truth,
    generate,
    load_truth,
    preset,
    sample_powerlaw_sizes,
    truth_stats,
)


def pairs_sharing(membership, layers):
    """Number of node pairs that agree on every layer in ``layers``."""
    if not layers:
        n = membership.shape[1]
        return n * (n - 1) // 2
    _, counts = np.unique(membership[list(layers)].T, axis=0, return_counts=True)
    return int(np.sum(counts * (counts - 1) // 2))


def union_edge_moments(spec, membership):
    """Mean and variance of the edge count by inclusion-exclusion over layer classes."""
    n_l = len(spec.layers)
    at_least = {t: pairs_sharing(membership, t) for r in range(n_l + 1) for t in itertools.combinations(range(n_l), r)}
    mean = var = 0.0
    for r in range(n_l + 1):
        for t in itertools.combinations(range(n_l), r):
            # pairs sharing exactly the layers in t
            exact = 0
            rest = [x for x in range(n_l) if x not in t]
            for k in range(len(rest) + 1):
                for extra in itertools.combinations(rest, k):
                    exact += (-1) ** k * at_least[tuple(sorted(t + extra))]
            miss = 1.0 - spec.p0
            for x in t:
                miss *= 1.0 - spec.layers[x].p
            p = 1.0 - miss
            mean += exact * p
            var += exact * p * (1 - p)
    return mean, var


def test_degenerate_size_range():
    assert sample_powerlaw_sizes(1.0, 60, 60, 300, np.random.default_rng(0)) == [60] * 5


def test_small_remainder_is_one_community():
    assert sample_powerlaw_sizes(1.0, 30, 100, 20, np.random.default_rng(0)) == [20]


def test_powerlaw_mean_size():
    means = [np.mean(sample_powerlaw_sizes(1.0, 30, 100, 30000, np.random.default_rng(s))) for s in range(10)]
    assert all(50 <= m <= 66 for m in means)


@given(st.integers(1, 5000), st.integers(1, 40), st.integers(0, 40), st.floats(0, 3), st.integers(0, 2**32 - 1))
def test_powerlaw_sizes_sum_to_n(n, lo, span, tau, seed):
    hi = lo + span
    sizes = sample_powerlaw_sizes(tau, lo, hi, n, np.random.default_rng(seed))
    assert sum(sizes) == n
    if n >= lo:
        assert all(lo <= s <= hi for s in sizes[:-1])
        assert sizes[-1] >= lo


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 300))
def test_decode_pairs_is_the_triangle(s):
    total = s * (s - 1) // 2
    i, j = _decode_pairs(np.arange(total), s)
    iu, ju = np.triu_indices(s, 1)
    assert np.array_equal(i, iu) and np.array_equal(j, ju)


def test_decode_pairs_large_block_boundaries():
    s = 30000
    idx = np.array([0, s - 2, s - 1, s * (s - 1) // 2 - 1])
    i, j = _decode_pairs(idx, s)
    assert list(zip(i.tolist(), j.tolist())) == [(0, 1), (0, s - 1), (1, 2), (s - 2, s - 1)]


def test_empty_probabilities_give_edgeless_graph():
    g, truth = generate(GeneratorSpec(50, (LayerSpec(0.0, communities=3),), p0=0.0))
    assert g.n == 50 and g.m == 0
    assert sorted(np.concatenate(truth.layers[0].communities).tolist()) == list(range(50))


def test_full_probability_gives_complete_graph():
    g, _ = generate(GeneratorSpec(12, (LayerSpec(1.0, communities=1),), p0=0.0))
    assert g.m == 66


def test_generation_is_deterministic_and_partitions_nodes():
    spec = preset("SynL3_1", rng_seed=5, n=2000)
    g1, t1 = generate(spec)
    g2, t2 = generate(spec)
    assert g1 == g2
    for a, b in zip(t1.layers, t2.layers):
        assert [c.tolist() for c in a] == [c.tolist() for c in b]
        assert sorted(np.concatenate(a.communities).tolist()) == list(range(2000))


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_edge_count_matches_union_probability(name):
    spec = preset(name, rng_seed=2, n=3000)
    g, truth = generate(spec)
    mean, var = union_edge_moments(spec, truth.membership(g.n))
    assert abs(g.m - mean) <= 3 * np.sqrt(var)


def test_inclusion_exclusion_oracle_on_a_tiny_case():
    # two layers over 4 nodes: brute-force the pair classes
    spec = GeneratorSpec(4, (LayerSpec(0.5, communities=2), LayerSpec(0.25, communities=2)), p0=0.1)
    mem = np.array([[0, 0, 1, 1], [0, 1, 0, 1]])
    expected = 0.0
    for a, b in itertools.combinations(range(4), 2):
        miss = 0.9
        for layer, spec_l in zip(mem, spec.layers):
            if layer[a] == layer[b]:
                miss *= 1 - spec_l.p
        expected += 1 - miss
    assert union_edge_moments(spec, mem)[0] == pytest.approx(expected)


def test_truth_round_trip_and_stats():
    g, truth = generate(preset("SynL2_2", rng_seed=3, n=600))
    buf = io.StringIO()
    dump_truth(truth, g.labels, buf)
    back = load_truth(io.StringIO(buf.getvalue()), g)
    for a, b in zip(truth.layers, back.layers):
        assert sorted(c.tolist() for c in a) == sorted(c.tolist() for c in b)
    stats = truth_stats(g, back)
    assert stats["n"] == 600 and stats["layers"] == 2
    assert stats["communities"] == [len(layer) for layer in truth.layers]


def test_spec_json_round_trip():
    spec = preset("SynL3_1", rng_seed=9)
    again = GeneratorSpec.from_dict(json.loads(json.dumps(spec.to_dict())))
    assert again == spec


def test_spec_validation():
    with pytest.raises(ValueError):
        LayerSpec(1.5, communities=2)
    with pytest.raises(ValueError):
        LayerSpec(0.5)
    with pytest.raises(ValueError):
        GeneratorSpec(0, ())
