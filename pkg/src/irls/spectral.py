"""Modified local spectral detection.

A seed-biased lazy random walk spans a small Krylov-style subspace; the
sparsest non-negative vector in that subspace that still covers the seeds
ranks nodes by membership likelihood. The seed set grows from the top of
the ranking, and the community is cut either at a known size or at the
prefix with the best weighted local modularity.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import DetectionFailed, EmptySeedSet, Infeasible, IsolatedSeed, NumericalFailure, OutOfRange
from .graph import WeightedGraph
from .quality import prefix_modularity_scan

log = logging.getLogger(__name__)

LP_TOL = 1e-7


@dataclass(frozen=True)
class LospParams:
    d: int = 3
    k: int = 3
    alpha: float | None = None  # stay probability; None = 1/(k_v+1) per node, k_v its neighbour count
    beta: float = 0.3
    gamma: float = 1.05
    n_set: int = 18
    n_com: int = 150
    revocation_factor: float = 2.0

    def __post_init__(self):
        if self.d < 1 or self.k < 0:
            raise ValueError("need d >= 1 and k >= 0")
        if self.alpha is not None and not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        if self.gamma <= 1.0:
            raise ValueError("gamma must exceed 1")
        if self.n_set < 1 or self.n_com < 1:
            raise ValueError("n_set and n_com must be positive")


@dataclass
class SpectralBasis:
    columns: np.ndarray  # (n_s, d) with orthonormal columns
    k: int
    rank_deficient: bool = False

    @property
    def d(self) -> int:
        return self.columns.shape[1]


@dataclass
class RankedNodes:
    order: np.ndarray
    values: np.ndarray
    objective: float = float("nan")

    def __len__(self):
        return len(self.order)

    def position(self, v: int) -> int:
        hits = np.flatnonzero(self.order == v)
        if len(hits) == 0:
            raise OutOfRange(f"node {v} not ranked")
        return int(hits[0])


def rank_values(y: np.ndarray, objective: float = float("nan")) -> RankedNodes:
    """Descending by value, ties by ascending index."""
    order = np.lexsort((np.arange(len(y)), -y))
    return RankedNodes(order, y[order], objective)


def _seed_array(seeds) -> np.ndarray:
    s = np.asarray(list(seeds) if not isinstance(seeds, np.ndarray) else seeds, dtype=np.int64)
    if len(s) == 0:
        raise EmptySeedSet("seed set is empty")
    return s


def build_basis(g_s: WeightedGraph, seeds, params: LospParams = LospParams()) -> SpectralBasis:
    """Orthonormalized lazy-walk iterates p_k, ..., p_{k+d-1} started uniformly on ``seeds``."""
    seeds = _seed_array(seeds)
    if seeds.min() < 0 or seeds.max() >= g_s.n:
        raise OutOfRange("seed outside graph")
    deg = g_s.degrees
    inv = np.divide(1.0, deg, out=np.zeros_like(deg), where=deg > 0)
    a = g_s.csr()
    if params.alpha is None:
        # stay with probability 1/(k_v + 1), k_v the unweighted degree
        count = np.diff(g_s.indptr).astype(np.float64)
        stay = np.where(count > 0, 1.0 / (count + 1.0), 1.0)
    else:
        stay = np.full(g_s.n, params.alpha)
    # isolated nodes keep their mass
    stay[deg <= 0] = 1.0
    p = np.zeros(g_s.n)
    p[seeds] = 1.0 / len(seeds)

    def step(x):
        return stay * x + a @ ((1.0 - stay) * x * inv)

    for _ in range(params.k):
        p = step(p)
    iterates = [p]
    for _ in range(params.d - 1):
        iterates.append(step(iterates[-1]))

    # modified Gram-Schmidt, dropping directions already spanned
    cols = []
    for v in iterates:
        scale = np.linalg.norm(v)
        w = v.copy()
        for _ in range(2):
            for q in cols:
                w -= (q @ w) * q
        norm = np.linalg.norm(w)
        if scale == 0 or norm <= 1e-10 * scale:
            continue
        cols.append(w / norm)
    if not cols:
        raise NumericalFailure("walk produced no usable direction")
    deficient = len(cols) < params.d
    if deficient:
        log.debug("basis rank %d < d=%d", len(cols), params.d)
    return SpectralBasis(np.column_stack(cols), params.k, deficient)


def solve_sparsest_indicator(basis: SpectralBasis, seeds) -> RankedNodes:
    """min sum(y) s.t. y = V u, y >= 0, y_i >= 1/|S| on seeds; ranked by y."""
    seeds = _seed_array(seeds)
    v = basis.columns
    n_s, d = v.shape
    c = v.sum(axis=0)
    a_ub = np.vstack([-v, -v[seeds]])
    b_ub = np.concatenate([np.zeros(n_s), np.full(len(seeds), -1.0 / len(seeds))])
    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=b_ub,
        bounds=[(None, None)] * d,
        method="highs",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status == 2:
        raise Infeasible("subspace holds no non-negative vector covering the seeds")
    if res.status != 0:
        raise NumericalFailure(f"LP solver failed: {res.message}")
    y = v @ res.x
    return rank_values(y, float(y.sum()))


def check_revocation(ranked: RankedNodes, seed_count: int, factor: float = 2.0) -> bool:
    """True when the top ``seed_count`` values spread by at least ``factor``."""
    if seed_count < 2:
        return False
    top = ranked.values[:seed_count]
    return bool(top.max() >= factor * top.min())


def augment_seeds(ranked: RankedNodes, params: LospParams, current=None) -> np.ndarray:
    """Top-j prefix for the largest qualifying j, capped at ``n_set``.

    j qualifies when y_j >= beta or y_j / y_{j+1} >= gamma. If nothing
    qualifies, ``current`` is returned (or the top node when absent).
    """
    y = ranked.values
    last = min(2 * params.n_set, len(y) - 1)
    best = 0
    for j in range(1, last + 1):
        yj, ynext = y[j - 1], y[j]
        if yj >= params.beta:
            best = j
        elif ynext > 0:
            if yj >= params.gamma * ynext:
                best = j
        elif yj > 0:
            best = j
    if best == 0:
        return np.asarray(current if current is not None else ranked.order[:1], dtype=np.int64)
    return ranked.order[: min(best, params.n_set)].copy()


def truncate_by_size(ranked: RankedNodes, size: int) -> np.ndarray:
    if size > len(ranked) or size < 1:
        raise OutOfRange(f"size {size} outside [1, {len(ranked)}]")
    return ranked.order[:size].copy()


def truncate_by_modularity(g_s: WeightedGraph, ranked: RankedNodes, n_com: int, seed: int) -> np.ndarray:
    """Prefix with the highest weighted local modularity among prefixes holding ``seed``."""
    pos = ranked.position(seed)
    limit = max(min(n_com, len(ranked)), pos + 1)
    scores = prefix_modularity_scan(g_s, ranked.order, limit)
    j = pos + int(np.argmax(scores[pos:]))
    return ranked.order[: j + 1].copy()


def _sized_with_seed(ranked: RankedNodes, size: int, seed: int) -> np.ndarray:
    size = min(size, len(ranked))
    comm = truncate_by_size(ranked, size)
    if seed not in comm:
        comm[-1] = seed
    return comm


def modified_losp(
    g_s: WeightedGraph, seed: int, params: LospParams = LospParams(), known_size: int | None = None
) -> np.ndarray:
    """Local community of ``seed`` in ``g_s`` (node indices, ranked order)."""
    if not 0 <= seed < g_s.n:
        raise OutOfRange(f"seed {seed} not in graph")
    if g_s.degrees[seed] <= 0:
        raise IsolatedSeed(f"seed {seed} has no edges")
    seeds = np.array([seed], dtype=np.int64)
    community = None
    while True:
        try:
            ranked = solve_sparsest_indicator(build_basis(g_s, seeds, params), seeds)
        except (Infeasible, NumericalFailure) as err:
            raise DetectionFailed(str(err), last_community=community) from err
        if check_revocation(ranked, len(seeds), params.revocation_factor):
            if community is None:
                community = _truncate(g_s, ranked, params, seed, known_size)
            return community
        community = _truncate(g_s, ranked, params, seed, known_size)
        grown = augment_seeds(ranked, params, seeds)
        if len(grown) <= len(seeds):
            return community
        seeds = grown


def _truncate(g_s, ranked, params, seed, known_size):
    if known_size is not None:
        return _sized_with_seed(ranked, known_size, seed)
    return truncate_by_modularity(g_s, ranked, params.n_com, seed)
