"""Community scoring: weighted local modularity, partition modularity, densities, F1."""

from __future__ import annotations

from collections.abc import Collection, Iterable
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCommunity, EmptySet, NoEdges
from .graph import WeightedGraph


@dataclass(frozen=True)
class DensityPair:
    p: float  # interior density
    q: float  # background density


def _as_index_array(c) -> np.ndarray:
    return np.fromiter(c, dtype=np.int64) if not isinstance(c, np.ndarray) else c.astype(np.int64, copy=False)


def internal_and_volume(g: WeightedGraph, c) -> tuple[float, float]:
    """(w_Cin, w_C) where w_C is the degree sum 2*w_Cin + w_Cout."""
    c = _as_index_array(c)
    mask = np.zeros(g.n, dtype=bool)
    mask[c] = True
    vol = float(g.degrees[c].sum())
    rows = g.edge_sources()
    inside = mask[rows] & mask[g.indices]
    w_in = float(g.weights[inside].sum()) / 2.0
    return w_in, vol


def weighted_local_modularity(g: WeightedGraph, c) -> float:
    """Q(C) = (w_Cin/w_G - (w_C/2w_G)^2) / n_C."""
    c = _as_index_array(c)
    if len(c) == 0:
        raise EmptySet("community is empty")
    w_g = g.total_weight
    if w_g <= 0:
        raise NoEdges("graph has no edge weight")
    w_in, vol = internal_and_volume(g, c)
    return (w_in / w_g - (vol / (2.0 * w_g)) ** 2) / len(c)


def prefix_modularity_scan(g: WeightedGraph, order, limit: int | None = None) -> np.ndarray:
    """Q of every prefix ``order[:j]`` for j = 1..limit, built incrementally."""
    w_g = g.total_weight
    if w_g <= 0:
        raise NoEdges("graph has no edge weight")
    order = np.asarray(order, dtype=np.int64)
    limit = len(order) if limit is None else min(limit, len(order))
    member = np.zeros(g.n, dtype=bool)
    out = np.empty(limit)
    w_in = 0.0
    vol = 0.0
    indptr, indices, weights, deg = g.indptr, g.indices, g.weights, g.degrees
    for j in range(limit):
        v = order[j]
        a, b = indptr[v], indptr[v + 1]
        w_in += float(weights[a:b][member[indices[a:b]]].sum())
        vol += deg[v]
        member[v] = True
        out[j] = (w_in / w_g - (vol / (2.0 * w_g)) ** 2) / (j + 1)
    return out


def partition_modularity(g: WeightedGraph, communities: Iterable[Collection[int]]) -> float:
    """Newman modularity (resolution 1) of disjoint communities; uncovered nodes add 0."""
    w_g = g.total_weight
    if w_g <= 0:
        raise NoEdges("graph has no edge weight")
    label = np.full(g.n, -1, dtype=np.int64)
    k = 0
    for c in communities:
        label[_as_index_array(c)] = k
        k += 1
    if k == 0:
        return 0.0
    rows = g.edge_sources()
    lr, lc = label[rows], label[g.indices]
    same = (lr == lc) & (lr >= 0)
    w_in = np.bincount(lr[same], weights=g.weights[same], minlength=k) / 2.0
    covered = label >= 0
    vol = np.bincount(label[covered], weights=g.degrees[covered], minlength=k)
    return float(np.sum(w_in / w_g - (vol / (2.0 * w_g)) ** 2))


def community_densities(g: WeightedGraph, c) -> DensityPair:
    """Interior density p and background density q of community ``c``."""
    c = _as_index_array(c)
    n_c, n = len(c), g.n
    if n_c < 2 or n_c >= n:
        raise DegenerateCommunity(f"need 2 <= n_C <= n-1, got n_C={n_c}, n={n}")
    w_in, vol = internal_and_volume(g, c)
    p = w_in / (0.5 * n_c * (n_c - 1))
    q = max(vol - 2.0 * w_in, 0.0) / (n_c * (n - n_c))  # clip float noise
    return DensityPair(p, q)


def f1(detected: Collection, truth: Collection) -> float:
    detected, truth = set(detected), set(truth)
    if not detected or not truth:
        return 0.0
    hit = len(detected & truth)
    if hit == 0:
        return 0.0
    precision = hit / len(detected)
    recall = hit / len(truth)
    return 2 * precision * recall / (precision + recall)
