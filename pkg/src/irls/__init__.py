"""Local detection of hidden communities in multi-layer networks."""

from .detect import DetectionResult, IrlsConfig, extract_seed_community, hicode_refine, irls_detect
from .evaluation import BenchmarkReport, potential_seeds, run_benchmark
from .graph import WeightedGraph, dump_edge_list, induced_subgraph, load_edge_list
from .partition import Layer, louvain, partition_without
from .quality import f1, partition_modularity, weighted_local_modularity
from .reduction import reduce_community, weaken_layer
from .sampling import SamplingParams, bfs_sample
from .spectral import LospParams, modified_losp
from .synth import GeneratorSpec, GroundTruth, LayerSpec, generate, preset
from .theory import TheoremParams, theorem1_check, theorem2_check

__all__ = [
    "BenchmarkReport",
    "DetectionResult",
    "GeneratorSpec",
    "GroundTruth",
    "IrlsConfig",
    "Layer",
    "LayerSpec",
    "LospParams",
    "SamplingParams",
    "TheoremParams",
    "WeightedGraph",
    "bfs_sample",
    "dump_edge_list",
    "extract_seed_community",
    "f1",
    "generate",
    "hicode_refine",
    "induced_subgraph",
    "irls_detect",
    "load_edge_list",
    "louvain",
    "modified_losp",
    "partition_modularity",
    "partition_without",
    "potential_seeds",
    "preset",
    "reduce_community",
    "run_benchmark",
    "theorem1_check",
    "theorem2_check",
    "weaken_layer",
    "weighted_local_modularity",
]
