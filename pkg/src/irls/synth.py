"""Multilayer planted-partition benchmark graphs.

Each layer partitions all nodes into Erdos-Renyi blocks; an extra
G(n, p0) supplies background noise. The output graph is the union of
every sampled edge, all with weight 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .errors import ParseError
from .graph import WeightedGraph
from .partition import Layer
from .quality import partition_modularity


@dataclass(frozen=True)
class LayerSpec:
    p: float
    communities: int | None = None  # fixed count, uniform random membership
    tau: float | None = None  # power-law sizes when communities is None
    min_size: int = 30
    max_size: int = 100

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.communities is None and self.tau is None:
            raise ValueError("layer needs either a community count or a power-law exponent")
        if self.communities is not None and self.communities < 1:
            raise ValueError("community count must be positive")
        if self.min_size > self.max_size or self.min_size < 1:
            raise ValueError("need 1 <= min_size <= max_size")


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    layers: tuple[LayerSpec, ...]
    p0: float = 0.001
    rng_seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0.0 <= self.p0 <= 1.0:
            raise ValueError("p0 must lie in [0, 1]")

    @classmethod
    def from_dict(cls, d: dict) -> GeneratorSpec:
        layers = []
        for lay in d["layers"]:
            lay = dict(lay)
            pl = lay.pop("powerlaw", None)
            if pl is not None:
                lay.update(tau=pl["tau"], min_size=pl.get("min_size", 30), max_size=pl.get("max_size", 100))
            layers.append(LayerSpec(**lay))
        return cls(n=int(d["n"]), layers=tuple(layers), p0=float(d.get("p0", 0.0)), rng_seed=int(d.get("rng_seed", 0)))

    @classmethod
    def load(cls, stream: TextIO) -> GeneratorSpec:
        return cls.from_dict(json.load(stream))

    def to_dict(self) -> dict:
        layers = []
        for lay in self.layers:
            if lay.communities is not None:
                layers.append({"p": lay.p, "communities": lay.communities})
            else:
                layers.append({"p": lay.p, "powerlaw": {"tau": lay.tau, "min_size": lay.min_size, "max_size": lay.max_size}})
        return {"n": self.n, "p0": self.p0, "rng_seed": self.rng_seed, "layers": layers}


@dataclass
class GroundTruth:
    layers: list[Layer] = field(default_factory=list)

    def membership(self, n: int) -> np.ndarray:
        """(n_layers, n) array of community ids."""
        return np.stack([layer.membership(n) for layer in self.layers]) if self.layers else np.zeros((0, n), int)


# Table-1-style presets (fixed-count layers only where the source fixes counts)
PRESETS = {
    "SynL2_1": dict(n=30000, p0=0.001, layers=[dict(p=0.25, powerlaw=dict(tau=1.0)), dict(p=0.20, powerlaw=dict(tau=1.0))]),
    "SynL2_2": dict(n=30000, p0=0.001, layers=[dict(p=0.40, communities=600), dict(p=0.15, communities=300)]),
    "SynL2_3": dict(n=30000, p0=0.001, layers=[dict(p=0.30, communities=500), dict(p=0.20, communities=500)]),
    "SynL3_1": dict(
        n=30000,
        p0=0.001,
        layers=[dict(p=0.25, powerlaw=dict(tau=1.0)), dict(p=0.20, powerlaw=dict(tau=1.0)), dict(p=0.15, powerlaw=dict(tau=1.0))],
    ),
    "SynL3_2": dict(
        n=30000, p0=0.001, layers=[dict(p=0.50, communities=1000), dict(p=0.20, communities=500), dict(p=0.10, communities=300)]
    ),
    "SynL3_3": dict(
        n=30000, p0=0.001, layers=[dict(p=0.25, communities=500), dict(p=0.20, communities=500), dict(p=0.15, communities=500)]
    ),
}


def preset(name: str, rng_seed: int = 0, n: int | None = None) -> GeneratorSpec:
    """Named dataset spec; ``n`` rescales node count and fixed community counts together."""
    d = json.loads(json.dumps(PRESETS[name]))
    if n is not None:
        scale = n / d["n"]
        d["n"] = n
        for lay in d["layers"]:
            if "communities" in lay:
                lay["communities"] = max(1, round(lay["communities"] * scale))
    d["rng_seed"] = rng_seed
    return GeneratorSpec.from_dict(d)


def sample_powerlaw_sizes(tau: float, min_size: int, max_size: int, n: int, rng: np.random.Generator) -> list[int]:
    """Integer sizes with P(s) ~ s^-tau on [min_size, max_size] summing to exactly n.

    The last draw is cut to the remainder; a remainder below ``min_size``
    is folded into the previous community.
    """
    if n < min_size:
        return [n] if n > 0 else []
    support = np.arange(min_size, max_size + 1)
    prob = support.astype(np.float64) ** (-tau)
    prob /= prob.sum()
    sizes: list[int] = []
    total = 0
    while total < n:
        s = int(rng.choice(support, p=prob))
        sizes.append(s)
        total += s
    sizes[-1] -= total - n
    if sizes[-1] < min_size and len(sizes) > 1:
        tail = sizes.pop()
        sizes[-1] += tail
    return sizes


def _decode_pairs(idx: np.ndarray, s: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-major upper-triangle pair index -> (i, j), i < j, for an s-node block."""
    idx = idx.astype(np.int64)
    b = 2 * s - 1
    i = np.floor((b - np.sqrt(b * b - 8.0 * idx)) / 2.0).astype(np.int64)
    start = i * (2 * s - i - 1) // 2
    # float rounding can put i off by one at row boundaries
    over = start > idx
    i[over] -= 1
    start = i * (2 * s - i - 1) // 2
    under = idx - start >= s - 1 - i
    i[under] += 1
    start = i * (2 * s - i - 1) // 2
    j = idx - start + i + 1
    return i, j


def _bernoulli_pairs(s: int, p: float, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    total = s * (s - 1) // 2
    if total == 0 or p <= 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    if p >= 1:
        return _decode_pairs(np.arange(total), s)
    count = int(rng.binomial(total, p))
    # a uniform subset of the right binomial size is exactly i.i.d. Bernoulli(p)
    chosen = rng.choice(total, size=count, replace=False)
    return _decode_pairs(np.sort(chosen), s)


def generate(spec: GeneratorSpec) -> tuple[WeightedGraph, GroundTruth]:
    rng = np.random.default_rng(spec.rng_seed)
    n = spec.n
    truth = GroundTruth()
    keys = []
    for lay in spec.layers:
        if lay.communities is not None:
            assign = rng.integers(0, lay.communities, size=n)
            layer = Layer.from_membership(assign)
        else:
            sizes = sample_powerlaw_sizes(lay.tau, lay.min_size, lay.max_size, n, rng)
            perm = rng.permutation(n)
            layer = Layer([np.sort(c) for c in np.split(perm, np.cumsum(sizes)[:-1])])
            layer.communities.sort(key=lambda c: c[0])
        truth.layers.append(layer)
        for members in layer.communities:
            i, j = _bernoulli_pairs(len(members), lay.p, rng)
            keys.append(members[i] * n + members[j])
    i, j = _bernoulli_pairs(n, spec.p0, rng)
    keys.append(i * n + j)
    key = np.unique(np.concatenate(keys)) if keys else np.zeros(0, np.int64)
    u, v = key // n, key % n
    g = WeightedGraph.from_edges(n, u, v, None, [str(x) for x in range(n)])
    return g, truth


# ------------------------------------------------------------------ truth I/O
def dump_truth(truth: GroundTruth, labels, stream: TextIO) -> None:
    """One line per community: ``layer community label...`` (layers 1-based)."""
    for li, layer in enumerate(truth.layers, start=1):
        for ci, members in enumerate(layer.communities):
            stream.write(f"{li} {ci} " + " ".join(labels[v] for v in members) + "\n")


def load_truth(stream: TextIO, g: WeightedGraph) -> GroundTruth:
    groups: dict[int, dict[str, list[int]]] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) < 3:
            raise ParseError(lineno, "expected 'layer community label...'")
        layer_id = int(line[0])
        groups.setdefault(layer_id, {}).setdefault(line[1], []).extend(g.index_of(lab) for lab in line[2:])
    truth = GroundTruth()
    for layer_id in sorted(groups):
        truth.layers.append(Layer([np.array(sorted(m), dtype=np.int64) for m in groups[layer_id].values()]))
    return truth


def truth_stats(g: WeightedGraph, truth: GroundTruth) -> dict:
    """Node/edge counts, per-layer modularity and mean community size."""
    return {
        "n": g.n,
        "m": g.m,
        "layers": len(truth.layers),
        "modularity": [partition_modularity(g, layer) for layer in truth.layers],
        "communities": [len(layer) for layer in truth.layers],
        "mean_size": [layer.covers / max(len(layer), 1) for layer in truth.layers],
    }
