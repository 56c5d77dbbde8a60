"""Seed-centred subgraph sampling: ring-wise BFS with an inward-ratio filter,
trimmed by a short random walk when the ball gets too large."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IsolatedSeed, OutOfRange
from .graph import WeightedGraph, induced_subgraph


@dataclass(frozen=True)
class SamplingParams:
    bfs_steps: int = 3
    inward_threshold: float = 0.0
    max_nodes: int = 10_000
    walk_steps: int = 3

    def __post_init__(self):
        if self.bfs_steps < 1 or self.max_nodes < 1 or self.walk_steps < 1:
            raise ValueError("bfs_steps, max_nodes and walk_steps must be positive")
        if not 0.0 <= self.inward_threshold <= 1.0:
            raise ValueError("inward_threshold must lie in [0, 1]")


@dataclass
class SampleResult:
    subgraph: WeightedGraph
    to_original: np.ndarray  # local index -> original index
    seed_local: int

    @property
    def seed_original(self) -> int:
        return int(self.to_original[self.seed_local])


def walk_mass(g: WeightedGraph, seed: int, steps: int) -> np.ndarray:
    """Probability mass of a plain random walk from ``seed`` after ``steps`` steps."""
    deg = g.degrees
    inv = np.divide(1.0, deg, out=np.zeros_like(deg), where=deg > 0)
    a = g.csr()
    p = np.zeros(g.n)
    p[seed] = 1.0
    for _ in range(steps):
        p = a @ (p * inv)
    return p


def random_walk_trim(g_s: WeightedGraph, seed: int, n_max: int, walk_steps: int, keep=()) -> np.ndarray:
    """Keep ``seed``, the nodes in ``keep`` and the highest-mass nodes up to ``n_max`` total.

    Ties in mass go to the smaller index. Returned indices are sorted.
    """
    if not 0 <= seed < g_s.n:
        raise OutOfRange(f"seed {seed} not in graph")
    if n_max >= g_s.n:
        return np.arange(g_s.n, dtype=np.int64)
    mass = walk_mass(g_s, seed, walk_steps)
    chosen = np.zeros(g_s.n, dtype=bool)
    chosen[seed] = True
    chosen[np.asarray(keep, dtype=np.int64)] = True
    room = n_max - int(chosen.sum())
    if room > 0:
        # lexsort: last key is primary
        ranking = np.lexsort((np.arange(g_s.n), -mass))
        ranking = ranking[~chosen[ranking]]
        chosen[ranking[:room]] = True
    return np.flatnonzero(chosen)


def bfs_sample(g: WeightedGraph, seed: int, params: SamplingParams = SamplingParams()) -> SampleResult:
    if not 0 <= seed < g.n:
        raise OutOfRange(f"seed {seed} not in graph")
    if g.degrees[seed] <= 0:
        raise IsolatedSeed(f"seed {g.labels[seed]!r} has no edges")
    a = g.csr()
    deg = g.degrees
    admitted = np.zeros(g.n, dtype=bool)
    admitted[seed] = True
    nbrs, _ = g.neighbors(seed)
    admitted[nbrs] = True
    frontier = np.zeros(g.n)
    frontier[nbrs] = 1.0
    for _ in range(1, params.bfs_steps):
        reach = (a @ frontier > 0) & ~admitted
        if not reach.any():
            break
        inward = a @ admitted.astype(np.float64)
        ratio = np.divide(inward, deg, out=np.zeros_like(inward), where=deg > 0)
        new = reach & (ratio >= params.inward_threshold)
        admitted |= new
        frontier = new.astype(np.float64)
    nodes = np.flatnonzero(admitted)
    ball, _ = induced_subgraph(g, nodes)
    seed_local = int(np.searchsorted(nodes, seed))
    if len(nodes) > params.max_nodes:
        keep_local = np.searchsorted(nodes, nbrs)
        kept = random_walk_trim(ball, seed_local, params.max_nodes, params.walk_steps, keep=keep_local)
        nodes = nodes[kept]
        seed_local = int(np.searchsorted(nodes, seed))
    sub, to_orig = induced_subgraph(g, nodes)
    return SampleResult(sub, to_orig, seed_local)
