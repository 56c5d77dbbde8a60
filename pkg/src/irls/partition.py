"""Weighted Louvain modularity maximization."""

from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np
import scipy.sparse as sp

from .graph import WeightedGraph, induced_subgraph

GAIN_TOL = 1e-9


@dataclass
class Layer:
    """Disjoint, non-empty communities over (a subset of) a graph's nodes."""

    communities: list[np.ndarray] = field(default_factory=list)

    @property
    def covers(self) -> int:
        return int(sum(len(c) for c in self.communities))

    def __len__(self):
        return len(self.communities)

    def __iter__(self):
        return iter(self.communities)

    def __bool__(self):
        return bool(self.communities)

    def membership(self, n: int) -> np.ndarray:
        """Community id per node, -1 for uncovered nodes."""
        lab = np.full(n, -1, dtype=np.int64)
        for k, c in enumerate(self.communities):
            lab[c] = k
        return lab

    def community_of(self, v: int) -> np.ndarray | None:
        for c in self.communities:
            if v in c:
                return c
        return None

    def mapped(self, index_map: np.ndarray) -> Layer:
        return Layer([np.asarray(index_map)[c] for c in self.communities])

    @classmethod
    def from_membership(cls, labels: np.ndarray) -> Layer:
        """Group nodes by label (ignoring negatives); communities ordered by smallest member."""
        labels = np.asarray(labels)
        nodes = np.flatnonzero(labels >= 0)
        if len(nodes) == 0:
            return cls([])
        order = np.argsort(labels[nodes], kind="stable")
        sorted_nodes = nodes[order]
        bounds = np.flatnonzero(np.diff(labels[sorted_nodes])) + 1
        groups = np.split(sorted_nodes, bounds)
        groups.sort(key=lambda c: c[0])
        return cls(groups)


@numba.njit(cache=True)
def _local_moves(indptr, indices, weights, k, order, m2, comm, tol):
    n = len(k)
    tot = np.zeros(n)
    for i in range(n):
        tot[comm[i]] += k[i]
    neigh_w = np.zeros(n)
    seen = np.full(n, -1, dtype=np.int64)
    cand = np.empty(n, dtype=np.int64)
    moved_any = False
    while True:
        moves = 0
        for idx in range(n):
            i = order[idx]
            ci = comm[i]
            ki = k[i]
            ncand = 0
            for p in range(indptr[i], indptr[i + 1]):
                j = indices[p]
                if j == i:
                    continue
                cj = comm[j]
                if seen[cj] != i:
                    seen[cj] = i
                    neigh_w[cj] = 0.0
                    cand[ncand] = cj
                    ncand += 1
                neigh_w[cj] += weights[p]
            own_w = neigh_w[ci] if seen[ci] == i else 0.0
            tot[ci] -= ki
            best = ci
            best_gain = own_w - tot[ci] * ki / m2
            for t in range(ncand):
                c = cand[t]
                if c == ci:
                    continue
                gain = neigh_w[c] - tot[c] * ki / m2
                # compare as modularity change: 2 * raw gain / m2
                if 2.0 * (gain - best_gain) / m2 > tol:
                    best = c
                    best_gain = gain
            tot[best] += ki
            if best != ci:
                comm[i] = best
                moves += 1
        if moves == 0:
            break
        moved_any = True
    return moved_any


def _level_modularity(mat: sp.csr_matrix, comm: np.ndarray, m2: float) -> float:
    k = np.asarray(mat.sum(axis=1)).ravel()
    coo = mat.tocoo()
    same = comm[coo.row] == comm[coo.col]
    nc = int(comm.max()) + 1
    inside = np.bincount(comm[coo.row[same]], weights=coo.data[same], minlength=nc)
    tot = np.bincount(comm, weights=k, minlength=nc)
    return float(np.sum(inside / m2 - (tot / m2) ** 2))


def _renumber(comm: np.ndarray) -> np.ndarray:
    # ids in order of first appearance by node index
    _, first, inv = np.unique(comm, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[inv]


@dataclass
class LouvainTrace:
    membership: np.ndarray
    level_modularity: list[float]


def louvain_trace(g: WeightedGraph, order_seed: int | None = None, tol: float = GAIN_TOL) -> LouvainTrace:
    """Run Louvain and keep the modularity reached after every level."""
    n = g.n
    membership = np.arange(n, dtype=np.int64)
    if n == 0 or g.total_weight <= 0:
        return LouvainTrace(membership, [])
    rng = np.random.default_rng(order_seed) if order_seed is not None else None
    mat = g.csr().astype(np.float64)
    m2 = 2.0 * g.total_weight
    history = [_level_modularity(mat, membership, m2)]
    while True:
        size = mat.shape[0]
        k = np.asarray(mat.sum(axis=1)).ravel()
        order = rng.permutation(size) if rng is not None else np.arange(size)
        comm = np.arange(size, dtype=np.int64)
        moved = _local_moves(
            mat.indptr.astype(np.int64), mat.indices.astype(np.int64), mat.data, k, order.astype(np.int64), m2, comm, tol
        )
        if not moved:
            break
        comm = _renumber(comm)
        membership = comm[membership]
        nc = int(comm.max()) + 1
        proj = sp.csr_matrix((np.ones(size), (np.arange(size), comm)), shape=(size, nc))
        mat = (proj.T @ mat @ proj).tocsr()
        mat.sum_duplicates()
        mat.sort_indices()
        history.append(_level_modularity(mat, np.arange(nc), m2))
        if nc == size:
            break
    return LouvainTrace(membership, history)


def louvain(g: WeightedGraph, order_seed: int | None = None) -> Layer:
    """Partition every node of ``g``; visit order is ascending unless ``order_seed`` is given."""
    if g.n == 0:
        return Layer([])
    return Layer.from_membership(louvain_trace(g, order_seed).membership)


def partition_without(g: WeightedGraph, removed, order_seed: int | None = None) -> Layer:
    """Louvain on the graph with ``removed`` deleted, mapped back to ``g``'s indices."""
    keep_mask = np.ones(g.n, dtype=bool)
    keep_mask[np.asarray(list(removed) if not isinstance(removed, np.ndarray) else removed, dtype=np.int64)] = False
    keep = np.flatnonzero(keep_mask)
    if len(keep) == 0:
        return Layer([])
    sub, to_orig = induced_subgraph(g, keep)
    return louvain(sub, order_seed).mapped(to_orig)
