"""Iterative layer-by-layer local detection and the global refinement baseline."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import DetectionFailed, SeedNotCovered
from .graph import WeightedGraph
from .partition import Layer, louvain, partition_without
from .reduction import weaken_layer
from .sampling import SampleResult, SamplingParams, bfs_sample
from .spectral import LospParams, modified_losp

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IrlsConfig:
    n_layers: int = 2
    iterations: int = 10
    losp: LospParams = field(default_factory=LospParams)
    sampling: SamplingParams = field(default_factory=SamplingParams)
    sizes: tuple[int, ...] | None = None  # known community size per layer; None = modularity cut
    order_seed: int | None = None

    def __post_init__(self):
        if self.n_layers < 1 or self.iterations < 1:
            raise ValueError("n_layers and iterations must be positive")
        if self.sizes is not None and len(self.sizes) != self.n_layers:
            raise ValueError("need one size per layer")


@dataclass
class DetectionResult:
    seed: int
    communities: list[np.ndarray]  # C_0^i per layer, original indices, sorted
    layers: list[Layer]  # last partition of the sample per layer, original indices
    trace: list[list[np.ndarray]]  # communities after every outer iteration

    def labelled(self, g: WeightedGraph) -> list[list[str]]:
        return [[g.labels[v] for v in c] for c in self.communities]


def resolve_seed(g: WeightedGraph, seed) -> int:
    """Node index for a label (str) or an index (int)."""
    if isinstance(seed, (int, np.integer)):
        return int(seed)
    return g.index_of(seed)


def _weakened(g_s: WeightedGraph, layers: Sequence[Layer], skip: int) -> WeightedGraph:
    g0 = g_s
    for j, layer in enumerate(layers):
        if j != skip and layer:
            g0 = weaken_layer(g0, layer)
    return g0


def irls_detect(g: WeightedGraph, seed, cfg: IrlsConfig = IrlsConfig(), sample: SampleResult | None = None) -> DetectionResult:
    """Local community of ``seed`` in each of ``cfg.n_layers`` layers.

    The sample is drawn once; every (iteration, layer) step starts from the
    pristine sample and weakens the other layers' latest partitions.
    """
    s = resolve_seed(g, seed)
    if sample is None:
        sample = bfs_sample(g, s, cfg.sampling)
    g_s, to_orig, seed_local = sample.subgraph, sample.to_original, sample.seed_local
    n_l = cfg.n_layers
    layers = [Layer() for _ in range(n_l)]
    found: list[np.ndarray | None] = [None] * n_l
    trace = []
    for t in range(cfg.iterations):
        for i in range(n_l):
            g0 = _weakened(g_s, layers, i)
            size = cfg.sizes[i] if cfg.sizes is not None else None
            try:
                c0 = modified_losp(g0, seed_local, cfg.losp, size)
            except DetectionFailed as err:
                c0 = err.last_community if err.last_community is not None else found[i]
                if c0 is None:
                    raise
                log.debug("layer %d iteration %d fell back to last community", i + 1, t + 1)
            c0 = np.sort(c0)
            rest = partition_without(g0, c0, cfg.order_seed)
            layers[i] = Layer([c0, *rest.communities])
            found[i] = c0
        trace.append([to_orig[c] for c in found])
    return DetectionResult(
        seed=s,
        communities=[to_orig[c] for c in found],
        layers=[layer.mapped(to_orig) for layer in layers],
        trace=trace,
    )


def hicode_refine(g_s: WeightedGraph, n_layers: int, iterations: int, order_seed: int | None = None) -> list[Layer]:
    """Global baseline: full-graph Louvain per layer with the other layers weakened."""
    layers = [Layer() for _ in range(n_layers)]
    for _ in range(iterations):
        for i in range(n_layers):
            layers[i] = louvain(_weakened(g_s, layers, i), order_seed)
    return layers


def extract_seed_community(layer: Layer, seed: int) -> np.ndarray:
    c = layer.community_of(seed)
    if c is None:
        raise SeedNotCovered(seed)
    return c
