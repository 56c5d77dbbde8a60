"""Weighted undirected graph in CSR form, plus edge-list I/O."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import TextIO

import numpy as np
import scipy.sparse as sp

from .errors import BadWeight, DuplicateEdge, OutOfRange, ParseError, SelfLoop, UnknownLabel


class WeightedGraph:
    """Immutable weighted simple graph.

    Each undirected edge is stored twice in the CSR arrays (once per
    endpoint) with identical weight. Nodes are dense indices ``0..n-1``;
    ``labels[i]`` is the external name of node ``i``.
    """

    __slots__ = ("indptr", "indices", "weights", "labels", "_index", "_degrees", "_total", "_csr")

    def __init__(self, indptr, indices, weights, labels: Sequence[str] | None = None):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.float64)
        n = len(self.indptr) - 1
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("label count does not match node count")
        self._index = None
        self._degrees = None
        self._total = None
        self._csr = None
        for arr in (self.indptr, self.indices, self.weights):
            arr.flags.writeable = False

    # ----------------------------------------------------------- construction
    @classmethod
    def from_edges(cls, n: int, u, v, w=None, labels: Sequence[str] | None = None) -> WeightedGraph:
        """Build from undirected edge arrays. Zero-weight edges are dropped.

        Raises ``SelfLoop``, ``DuplicateEdge`` or ``BadWeight`` (line number 0)
        on invalid input; loaders that know line numbers validate first.
        """
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        w = np.ones(len(u)) if w is None else np.asarray(w, dtype=np.float64)
        if len(u) and (u.min() < 0 or v.min() < 0 or max(u.max(), v.max()) >= n):
            raise OutOfRange("edge endpoint outside [0, n)")
        if np.any(u == v):
            raise SelfLoop(0, "self-loop")
        if np.any(~np.isfinite(w)) or np.any(w < 0):
            raise BadWeight(0, "negative or non-finite weight")
        keep = w > 0
        u, v, w = u[keep], v[keep], w[keep]
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        key = lo * n + hi
        if len(np.unique(key)) != len(key):
            raise DuplicateEdge(0, "duplicate edge")
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        vals = np.concatenate([w, w])
        mat = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        mat.sort_indices()
        return cls(mat.indptr, mat.indices, mat.data, labels)

    @classmethod
    def empty(cls) -> WeightedGraph:
        return cls(np.zeros(1, dtype=np.int64), [], [], [])

    # -------------------------------------------------------------- accessors
    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def total_weight(self) -> float:
        """w_G: each undirected edge counted once."""
        if self._total is None:
            self._total = float(self.weights.sum()) / 2.0
        return self._total

    @property
    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            d = np.bincount(self.edge_sources(), weights=self.weights, minlength=self.n).astype(np.float64)
            d.flags.writeable = False
            self._degrees = d
        return self._degrees

    def weighted_degree(self, v: int) -> float:
        if not 0 <= v < self.n:
            raise OutOfRange(f"node {v} not in [0, {self.n})")
        return float(self.degrees[v])

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        if not 0 <= v < self.n:
            raise OutOfRange(f"node {v} not in [0, {self.n})")
        a, b = self.indptr[v], self.indptr[v + 1]
        return self.indices[a:b], self.weights[a:b]

    def weight(self, u: int, v: int) -> float:
        nbrs, ws = self.neighbors(u)
        pos = np.searchsorted(nbrs, v)
        if pos < len(nbrs) and nbrs[pos] == v:
            return float(ws[pos])
        return 0.0

    def index_of(self, label: str) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def csr(self) -> sp.csr_matrix:
        if self._csr is None:
            self._csr = sp.csr_matrix((self.weights, self.indices, self.indptr), shape=(self.n, self.n))
        return self._csr

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Undirected edges as (u, v, w) with u < v, in CSR order."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        upper = rows < self.indices
        return rows[upper], self.indices[upper], self.weights[upper]

    def edge_sources(self) -> np.ndarray:
        """Row index of every CSR entry."""
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))

    def with_weights(self, weights: np.ndarray) -> WeightedGraph:
        """New graph with per-CSR-entry weights replaced; zero entries are dropped."""
        weights = np.asarray(weights, dtype=np.float64)
        if np.all(weights > 0):
            return WeightedGraph(self.indptr, self.indices, weights, self.labels)
        keep = weights > 0
        rows = self.edge_sources()[keep]
        counts = np.bincount(rows, minlength=self.n)
        indptr = np.concatenate([[0], np.cumsum(counts)])
        return WeightedGraph(indptr, self.indices[keep], weights[keep], self.labels)

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m}, w_G={self.total_weight:g})"

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.weights, other.weights)
        )

    __hash__ = None


def induced_subgraph(g: WeightedGraph, nodes: Iterable[int]) -> tuple[WeightedGraph, np.ndarray]:
    """Subgraph on ``nodes`` (kept in the given order) and the local->original index map."""
    nodes = np.asarray(list(nodes) if not isinstance(nodes, np.ndarray) else nodes, dtype=np.int64)
    if len(nodes) == 0:
        return WeightedGraph.empty(), nodes
    if nodes.min() < 0 or nodes.max() >= g.n:
        raise OutOfRange("node index outside graph")
    sub = g.csr()[nodes][:, nodes].tocsr()
    sub.sort_indices()
    labels = [g.labels[i] for i in nodes]
    return WeightedGraph(sub.indptr, sub.indices, sub.data, labels), nodes


def weighted_degree(g: WeightedGraph, v: int) -> float:
    return g.weighted_degree(v)


# ------------------------------------------------------------------ text I/O
def load_edge_list(stream: TextIO | Iterable[str]) -> WeightedGraph:
    """Parse ``u v [w]`` lines; ``#`` starts a comment.

    A line with a single token declares a node without edges, so that
    isolated nodes survive a round trip.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    seen: set[tuple[int, int]] = set()

    def node(tok):
        i = index.get(tok)
        if i is None:
            i = index[tok] = len(labels)
            labels.append(tok)
        return i

    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) == 1:
            node(toks[0])
            continue
        if len(toks) not in (2, 3):
            raise ParseError(lineno, f"expected 'u v [w]', got {raw.rstrip()!r}")
        if toks[0] == toks[1]:
            raise SelfLoop(lineno, f"self-loop on {toks[0]!r}")
        w = 1.0
        if len(toks) == 3:
            try:
                w = float(toks[2])
            except ValueError:
                raise ParseError(lineno, f"bad weight {toks[2]!r}") from None
            if not (w > 0 and np.isfinite(w)):
                raise BadWeight(lineno, f"weight must be positive, got {toks[2]}")
        a, b = node(toks[0]), node(toks[1])
        key = (a, b) if a < b else (b, a)
        if key in seen:
            raise DuplicateEdge(lineno, f"duplicate edge {toks[0]} {toks[1]}")
        seen.add(key)
        us.append(a)
        vs.append(b)
        ws.append(w)
    return WeightedGraph.from_edges(len(labels), us, vs, ws, labels)


def _fmt_weight(w: float) -> str:
    return repr(float(w))


def dump_edge_list(g: WeightedGraph, stream: TextIO) -> None:
    """Write edges sorted by (min label, max label); weight omitted when exactly 1."""
    u, v, w = g.edges()
    lab = g.labels
    rows = []
    for a, b, x in zip(u.tolist(), v.tolist(), w.tolist()):
        la, lb = lab[a], lab[b]
        if lb < la:
            la, lb = lb, la
        rows.append((la, lb, x))
    rows.sort(key=lambda r: (r[0], r[1]))
    for la, lb, x in rows:
        stream.write(f"{la} {lb}\n" if x == 1.0 else f"{la} {lb} {_fmt_weight(x)}\n")
    isolated = sorted(lab[i] for i in np.flatnonzero(np.diff(g.indptr) == 0))
    for name in isolated:
        stream.write(f"{name}\n")
