"""Closed-form checks for when a partially sampled neighbour community gets merged
into the seed's community, and what that costs the next layer after weakening.

Notation: ``a`` = edges inside C1, ``b`` = edges leaving C1, ``e`` = edges in the
subgraph, ``t`` = size of the retained part of C2 relative to C1.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import TextIO

import numpy as np

from .graph import WeightedGraph
from .quality import internal_and_volume


@dataclass(frozen=True)
class TheoremParams:
    n: float
    n1: float
    e_1in: float
    e_1out: float
    e: float
    t: float
    r: float = 0.5
    p1: float = 0.0
    p2: float = 0.0
    q2: float | None = None  # share of subgraph weight inside layer-2 communities; defaults to r

    def __post_init__(self):
        if not self.n1 < self.n:
            raise ValueError("need n1 < n")
        if self.e < self.e_1in:
            raise ValueError("need e >= e_1in")
        if min(self.n, self.n1, self.e_1in, self.e_1out, self.e, self.t, self.p1, self.p2) < 0:
            raise ValueError("parameters must be non-negative")
        if not 0.0 < self.t <= 1.0:
            raise ValueError("t must lie in (0, 1]")

    @classmethod
    def from_dict(cls, d: dict) -> TheoremParams:
        return cls(**{k: float(v) if v is not None else None for k, v in d.items()})

    @classmethod
    def load(cls, stream: TextIO) -> TheoremParams:
        return cls.from_dict(json.load(stream))

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def e_12(self):
        """Edges between C1 and the retained part of C2 under uniform spreading."""
        return self.t * self.n1 / (self.n - self.n1) * self.e_1out


def _shift(p: TheoremParams):
    return p.n1 * p.e * p.e_1out / (p.n - p.n1)


def merge_form(p: TheoremParams):
    """Linear form in t; negative iff merging C1 and C2 raises global modularity."""
    a, b = p.e_1in, p.e_1out
    return (2 * a * a + a * b) * p.t + (a * b + b * b / 2 - _shift(p))


def separate_form(p: TheoremParams):
    """Cubic form in t; positive iff C1 alone beats C1+C2 on weighted local modularity."""
    a, b, e, t = p.e_1in, p.e_1out, p.e, p.t
    return (
        a * a * t**3
        + a * b * t**2
        + (2 * a * a + a * b + b * b / 4 - e * a) * t
        + (b * b / 4 - a * a + e * a - _shift(p))
    )


def theorem1_check(p: TheoremParams) -> tuple[bool, bool]:
    """(global partitioning merges C1 and C2, local truncation keeps C1 alone)."""
    return bool(merge_form(p) < 0), bool(separate_form(p) > 0)


def merge_threshold(p: TheoremParams) -> float:
    """The t at which the linear form changes sign (nan if its slope is zero)."""
    a, b = p.e_1in, p.e_1out
    slope = 2 * a * a + a * b
    if slope == 0:
        return float("nan")
    return -(a * b + b * b / 2 - _shift(p)) / slope


@dataclass(frozen=True)
class WeightShift:
    total: float
    in_separate: float
    out_separate: float
    in_merged: float
    out_merged: float


def weight_shift(p: TheoremParams) -> WeightShift:
    """Weight removed from layer-2 interior/exterior edges in both scenarios."""
    t, r = p.t, p.r
    total = (p.p1 - p.p2) * (t * t + 1) * p.n1**2
    share = (t * t + 1) / (t + 1) ** 2
    return WeightShift(
        total=total,
        in_separate=total * r,
        out_separate=total * (1 - r),
        in_merged=total * 2 * t / (t + 1) ** 2 + total * share * r,
        out_merged=total * share * (1 - r),
    )


def theorem2_check(p: TheoremParams) -> tuple[float, float]:
    """Layer-2 modularity gain after weakening, (C1, C2 separate) vs (merged).

    Layer-2 modularity is taken as its interior weight share minus a null
    term that does not depend on the weakening, so only the share moves.
    """
    if not 0.0 < p.r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    if p.p1 < p.p2:
        raise ValueError("need p1 >= p2")
    w = weight_shift(p)
    total = p.e
    if total <= w.total:
        raise ValueError("weakening would remove all subgraph weight; need e > (p1-p2)(t^2+1) n1^2")
    inner = (p.q2 if p.q2 is not None else p.r) * total
    before = inner / total
    sep = (inner - w.in_separate) / (total - w.total) - before
    merged = (inner - w.in_merged) / (total - w.total) - before
    return sep, merged


# ------------------------------------------------------------------ realizations
@dataclass(frozen=True)
class BlockScenario:
    """Three-block Bernoulli model: C1, the retained part of C2, and the rest."""

    n: int
    n1: int
    n2: int
    p_in: float  # inside C1 and inside C2
    p_out: float  # between C1 or C2 and anything outside it
    p_rest: float  # among the remaining nodes

    def expected_params(self) -> TheoremParams:
        nr = self.n - self.n1 - self.n2
        a = self.p_in * self.n1 * (self.n1 - 1) / 2
        b = self.p_out * self.n1 * (self.n - self.n1)
        a2 = self.p_in * self.n2 * (self.n2 - 1) / 2
        b2 = self.p_out * self.n2 * (self.n - self.n2)
        e12 = self.p_out * self.n1 * self.n2
        e = a + a2 + b + b2 - e12 + self.p_rest * nr * (nr - 1) / 2
        return TheoremParams(self.n, self.n1, a, b, e, self.n2 / self.n1)


def realize_scenario(s: BlockScenario, rng: np.random.Generator) -> WeightedGraph:
    """Nodes 0..n1-1 form C1, the next n2 form C2."""
    n = s.n
    block = np.full(n, 2)
    block[: s.n1] = 0
    block[s.n1 : s.n1 + s.n2] = 1
    prob = np.array([[s.p_in, s.p_out, s.p_out], [s.p_out, s.p_in, s.p_out], [s.p_out, s.p_out, s.p_rest]])
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < prob[block[iu], block[ju]]
    return WeightedGraph.from_edges(n, iu[keep], ju[keep], None)


def observed_params(g: WeightedGraph, c1: np.ndarray, c2: np.ndarray) -> TheoremParams:
    """Edge counts of a realization, with t from the block sizes."""
    a, vol = internal_and_volume(g, c1)
    return TheoremParams(g.n, len(c1), a, vol - 2 * a, g.total_weight, len(c2) / len(c1))


def observed_behaviour(g: WeightedGraph, c1: np.ndarray, c2: np.ndarray) -> tuple[bool, bool]:
    """Directly measured (merge raises modularity, C1 beats C1+C2 locally)."""
    e = g.total_weight

    def qprime(c):
        w_in, vol = internal_and_volume(g, c)
        return w_in / e - (vol / (2 * e)) ** 2

    both = np.concatenate([c1, c2])
    merge = qprime(both) > qprime(c1) + qprime(c2)
    separate = qprime(c1) / len(c1) > qprime(both) / len(both)
    return bool(merge), bool(separate)


# a subgraph where global partitioning merges the broken neighbour but local truncation does not
MERGE_SCENARIO = BlockScenario(n=1500, n1=50, n2=25, p_in=0.8, p_out=0.03, p_rest=0.12)
# sparse remainder: merging no longer pays off globally
SPARSE_SCENARIO = BlockScenario(n=1500, n1=50, n2=25, p_in=0.8, p_out=0.03, p_rest=0.01)
