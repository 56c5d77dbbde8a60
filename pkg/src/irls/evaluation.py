"""Benchmark protocol: eligible seeds, per-layer F1 over many query nodes, reports."""

from __future__ import annotations

import csv
import io
import json
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .detect import IrlsConfig, extract_seed_community, hicode_refine, irls_detect
from .errors import NoEligibleSeeds
from .graph import WeightedGraph
from .quality import f1
from .sampling import bfs_sample
from .synth import GroundTruth

METHODS = ("irls-gt", "irls-auto", "hicode")


def potential_seeds(truth: GroundTruth, g: WeightedGraph, n_set: int) -> np.ndarray:
    """Nodes whose community in every layer is larger than ``n_set`` and holds a neighbour."""
    ok = np.ones(g.n, dtype=bool)
    rows = g.edge_sources()
    for layer in truth.layers:
        lab = layer.membership(g.n)
        sizes = np.bincount(lab[lab >= 0], minlength=len(layer))
        big = np.zeros(g.n, dtype=bool)
        big[lab >= 0] = sizes[lab[lab >= 0]] > n_set
        same = (lab[rows] == lab[g.indices]) & (lab[rows] >= 0)
        linked = np.zeros(g.n, dtype=bool)
        linked[rows[same]] = True
        ok &= big & linked
    return np.flatnonzero(ok)


@dataclass
class CaseResult:
    case: int
    seed: str
    f1: list[float]
    seconds: float = 0.0
    trace_f1: list[list[float]] = field(default_factory=list)  # [iteration][layer]


@dataclass
class BenchmarkReport:
    method: str
    cases: list[CaseResult]
    config: dict
    rng_seed: int

    @property
    def n_layers(self) -> int:
        return len(self.cases[0].f1) if self.cases else 0

    @property
    def layer_means(self) -> list[float]:
        if not self.cases:
            return []
        return [float(np.mean([c.f1[i] for c in self.cases])) for i in range(self.n_layers)]

    @property
    def grand_mean(self) -> float:
        means = self.layer_means
        return float(np.mean(means)) if means else 0.0

    def iteration_means(self) -> list[list[float]]:
        """Mean F1 per (iteration, layer), for runs that kept a trace."""
        if not self.cases or not self.cases[0].trace_f1:
            return []
        arr = np.array([c.trace_f1 for c in self.cases])
        return arr.mean(axis=0).tolist()

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["case", "seed", "layer", "f1"])
        for c in self.cases:
            for i, score in enumerate(c.f1, start=1):
                w.writerow([c.case, c.seed, i, repr(score)])
        return buf.getvalue()

    def timing_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["case", "seed", "seconds"])
        for c in self.cases:
            w.writerow([c.case, c.seed, f"{c.seconds:.6f}"])
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "method": self.method,
            "cases": len(self.cases),
            "rng_seed": self.rng_seed,
            "layer_means": self.layer_means,
            "mean": self.grand_mean,
            "iteration_means": self.iteration_means(),
            "config": self.config,
        }

    def to_json(self) -> str:
        d = self.summary()
        d["per_case"] = [{"case": c.case, "seed": c.seed, "f1": c.f1} for c in self.cases]
        return json.dumps(d, indent=2, sort_keys=True) + "\n"


def config_dict(cfg: IrlsConfig) -> dict:
    d = asdict(cfg)
    d["sizes"] = list(cfg.sizes) if cfg.sizes is not None else None
    return d


def case_order_seed(rng_seed: int, case: int) -> int:
    return int(np.random.SeedSequence([rng_seed, case]).generate_state(1)[0])


# state shared with forked workers
_SHARED: dict = {}


def run_case(g: WeightedGraph, truth: GroundTruth, method: str, cfg: IrlsConfig, case: int, seed: int, order_seed: int) -> CaseResult:
    start = time.perf_counter()
    truths = [layer.community_of(seed) for layer in truth.layers]
    sample = bfs_sample(g, seed, cfg.sampling)
    trace_f1: list[list[float]] = []
    if method == "hicode":
        layers = hicode_refine(sample.subgraph, cfg.n_layers, cfg.iterations, order_seed)
        found = [sample.to_original[extract_seed_community(layer, sample.seed_local)] for layer in layers]
    else:
        sizes = tuple(len(t) for t in truths) if method == "irls-gt" else None
        run_cfg = IrlsConfig(cfg.n_layers, cfg.iterations, cfg.losp, cfg.sampling, sizes, order_seed)
        res = irls_detect(g, seed, run_cfg, sample=sample)
        found = res.communities
        trace_f1 = [[f1(c, t) for c, t in zip(step, truths)] for step in res.trace]
    scores = [f1(c, t) for c, t in zip(found, truths)]
    return CaseResult(case, g.labels[seed], scores, time.perf_counter() - start, trace_f1)


def _worker(args):
    g, truth, method, cfg = _SHARED["g"], _SHARED["truth"], _SHARED["method"], _SHARED["cfg"]
    return run_case(g, truth, method, cfg, *args)


def choose_seeds(pool: np.ndarray, cases: int, rng_seed: int) -> np.ndarray:
    rng = np.random.default_rng(rng_seed)
    return rng.choice(pool, size=cases, replace=len(pool) < cases)


def run_benchmark(
    g: WeightedGraph,
    truth: GroundTruth,
    method: str,
    cases: int = 100,
    cfg: IrlsConfig = IrlsConfig(),
    rng_seed: int = 0,
    jobs: int = 1,
    seeds: np.ndarray | None = None,
) -> BenchmarkReport:
    """Run ``method`` on ``cases`` random eligible seeds; results are ordered by case index."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if len(truth.layers) != cfg.n_layers:
        cfg = IrlsConfig(len(truth.layers), cfg.iterations, cfg.losp, cfg.sampling, None, cfg.order_seed)
    if seeds is None:
        pool = potential_seeds(truth, g, cfg.losp.n_set)
        if len(pool) == 0:
            raise NoEligibleSeeds("no node satisfies the eligibility rule")
        seeds = choose_seeds(pool, cases, rng_seed)
    tasks = [(i, int(s), case_order_seed(rng_seed, i)) for i, s in enumerate(seeds)]
    if jobs <= 1:
        results = [run_case(g, truth, method, cfg, *t) for t in tasks]
    else:
        _SHARED.update(g=g, truth=truth, method=method, cfg=cfg)
        try:
            with ProcessPoolExecutor(jobs, mp_context=mp.get_context("fork")) as pool_:
                results = list(pool_.map(_worker, tasks))
        finally:
            _SHARED.clear()
    return BenchmarkReport(method, results, config_dict(cfg), rng_seed)
