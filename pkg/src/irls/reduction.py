"""Layer weakening by scaling intra-community weights down to background density."""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .graph import WeightedGraph
from .quality import community_densities


def reduce_community(g: WeightedGraph, c) -> WeightedGraph:
    """Return a copy of ``g`` whose edges inside ``c`` are scaled by min(1, q/p).

    Raises ``DegenerateCommunity`` unless 2 <= |c| <= n-1.
    """
    c = np.asarray(list(c) if not isinstance(c, np.ndarray) else c, dtype=np.int64)
    dens = community_densities(g, c)
    if dens.p <= 0 or dens.q >= dens.p:
        return g
    mask = np.zeros(g.n, dtype=bool)
    mask[c] = True
    inside = mask[g.edge_sources()] & mask[g.indices]
    w = g.weights.copy()
    w[inside] *= max(dens.q, 0.0) / dens.p
    return g.with_weights(w)


def reduction_factors(g: WeightedGraph, communities: Iterable) -> tuple[np.ndarray, np.ndarray]:
    """Per-node community label (-1 = untouched) and per-community scale factor.

    All densities are measured on ``g`` as given, so the factors do not
    depend on the order of ``communities``. Singletons and communities
    spanning the whole graph are skipped.
    """
    n = g.n
    label = np.full(n, -1, dtype=np.int64)
    k = 0
    for c in communities:
        c = np.asarray(c, dtype=np.int64)
        if 2 <= len(c) <= n - 1:
            label[c] = k
            k += 1
    if k == 0:
        return label, np.ones(0)
    rows = g.edge_sources()
    lr = label[rows]
    same = (lr == label[g.indices]) & (lr >= 0)
    w_in = np.bincount(lr[same], weights=g.weights[same], minlength=k) / 2.0
    covered = label >= 0
    vol = np.bincount(label[covered], weights=g.degrees[covered], minlength=k)
    size = np.bincount(label[covered], minlength=k).astype(np.float64)
    p = w_in / (0.5 * size * (size - 1))
    q = np.maximum(vol - 2.0 * w_in, 0.0) / (size * (n - size))
    factor = np.ones(k)
    shrink = (p > 0) & (q < p)
    factor[shrink] = q[shrink] / p[shrink]
    return label, factor


def weaken_layer(g: WeightedGraph, layer: Iterable) -> WeightedGraph:
    """Apply the reduction to every community of ``layer`` (snapshot densities)."""
    label, factor = reduction_factors(g, layer)
    if len(factor) == 0 or np.all(factor == 1.0):
        return g
    rows = g.edge_sources()
    lr = label[rows]
    same = (lr == label[g.indices]) & (lr >= 0)
    w = g.weights.copy()
    w[same] *= factor[lr[same]]
    return g.with_weights(w)
