"""Command-line interface: generate, detect, benchmark, theory, stats."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .detect import IrlsConfig, irls_detect
from .errors import IrlsError
from .evaluation import METHODS, run_benchmark
from .graph import dump_edge_list, load_edge_list
from .sampling import SamplingParams
from .spectral import LospParams
from .synth import PRESETS, GeneratorSpec, dump_truth, generate, load_truth, preset, truth_stats
from .theory import TheoremParams, merge_threshold, theorem1_check, theorem2_check

# (n_set, n_com, max_nodes) by dataset kind
KIND_PRESETS = {"synthetic": (18, 150, 10_000), "real": (9, 500, 5_000)}

DEFAULTS = {
    "layers": 2,
    "iterations": 10,
    "truncation": "auto",
    "sizes": None,
    "alpha": LospParams.alpha,
    "beta": LospParams.beta,
    "gamma": LospParams.gamma,
    "max_seed_set": LospParams.n_set,
    "max_community": LospParams.n_com,
    "bfs_steps": SamplingParams.bfs_steps,
    "inward_threshold": SamplingParams.inward_threshold,
    "max_nodes": SamplingParams.max_nodes,
    "walk_steps": SamplingParams.walk_steps,
    "rng_seed": None,
    "cases": 100,
    "jobs": 1,
}


def _add_detection_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file of flag defaults (keys use underscores)")
    p.add_argument("--preset", choices=sorted(KIND_PRESETS), help="dataset kind: sets seed-set, community and sample caps")
    p.add_argument("--layers", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--truncation", choices=["auto", "sizes"])
    p.add_argument("--sizes", help="comma-separated community size per layer (implies --truncation sizes)")
    p.add_argument("--alpha", type=float, help="lazy walk stay probability")
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--max-seed-set", type=int)
    p.add_argument("--max-community", type=int)
    p.add_argument("--bfs-steps", type=int)
    p.add_argument("--inward-threshold", type=float)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--walk-steps", type=int)
    p.add_argument("--rng-seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irls", description="Local multi-layer community detection.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a multilayer planted-partition graph")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", type=Path, help="generator spec JSON")
    src.add_argument("--dataset", choices=sorted(PRESETS), help="built-in synthetic dataset")
    g.add_argument("--nodes", type=int, help="rescale a built-in dataset to this many nodes")
    g.add_argument("--out-graph", type=Path, required=True)
    g.add_argument("--out-truth", type=Path, required=True)
    g.add_argument("--rng-seed", type=int)

    d = sub.add_parser("detect", help="local communities of one seed in every layer")
    d.add_argument("--graph", type=Path, required=True)
    d.add_argument("--seed", required=True, help="node label")
    d.add_argument("--out", type=Path, help="result file (default: stdout)")
    d.add_argument("--meta", type=Path, help="run metadata JSON (default: <out>.json)")
    _add_detection_flags(d)

    b = sub.add_parser("benchmark", help="mean per-layer F1 over random eligible seeds")
    b.add_argument("--graph", type=Path, required=True)
    b.add_argument("--truth", type=Path, required=True)
    b.add_argument("--method", choices=METHODS, required=True)
    b.add_argument("--cases", type=int)
    b.add_argument("--jobs", type=int)
    b.add_argument("--out-csv", type=Path, required=True)
    b.add_argument("--out-json", type=Path, help="default: <out-csv>.json")
    b.add_argument("--out-timing", type=Path, help="per-case wall-clock CSV")
    _add_detection_flags(b)

    t = sub.add_parser("theory", help="evaluate the merge/separate conditions on closed forms")
    t.add_argument("--check", type=int, choices=[1, 2], required=True)
    t.add_argument("--params", type=Path, required=True)

    s = sub.add_parser("stats", help="graph size and planted-layer modularity")
    s.add_argument("--graph", type=Path, required=True)
    s.add_argument("--truth", type=Path, required=True)
    s.add_argument("--json", type=Path, help="also write the statistics as JSON")
    return parser


def resolve_options(args: argparse.Namespace) -> dict:
    """Built-in defaults < --preset < --config file < explicit flags."""
    opts = dict(DEFAULTS)
    config = {}
    if getattr(args, "config", None) is not None:
        config = json.loads(args.config.read_text())
        unknown = set(config) - set(DEFAULTS) - {"preset"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kind = args.preset or config.get("preset")
    if kind is not None:
        if kind not in KIND_PRESETS:
            raise ValueError(f"unknown preset {kind!r}")
        opts["max_seed_set"], opts["max_community"], opts["max_nodes"] = KIND_PRESETS[kind]
    opts.update({k: v for k, v in config.items() if k != "preset"})
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    if isinstance(opts["sizes"], str):
        opts["sizes"] = [int(x) for x in opts["sizes"].split(",") if x]
    if opts["sizes"] is not None:
        opts["truncation"] = "sizes"
    elif opts["truncation"] == "sizes":
        raise ValueError("--truncation sizes needs --sizes")
    return opts


def build_config(opts: dict) -> IrlsConfig:
    losp = LospParams(
        alpha=opts["alpha"],
        beta=opts["beta"],
        gamma=opts["gamma"],
        n_set=opts["max_seed_set"],
        n_com=opts["max_community"],
    )
    sampling = SamplingParams(
        bfs_steps=opts["bfs_steps"],
        inward_threshold=opts["inward_threshold"],
        max_nodes=opts["max_nodes"],
        walk_steps=opts["walk_steps"],
    )
    sizes = tuple(opts["sizes"]) if opts["truncation"] == "sizes" else None
    return IrlsConfig(opts["layers"], opts["iterations"], losp, sampling, sizes, opts["rng_seed"])


def _read_graph(path: Path):
    with path.open() as fh:
        return load_edge_list(fh)


def cmd_generate(args) -> None:
    if args.spec is not None:
        spec = GeneratorSpec.load(args.spec.open())
        if args.rng_seed is not None:
            spec = GeneratorSpec(spec.n, spec.layers, spec.p0, args.rng_seed)
    else:
        spec = preset(args.dataset, args.rng_seed or 0, args.nodes)
    g, truth = generate(spec)
    with args.out_graph.open("w") as fh:
        dump_edge_list(g, fh)
    with args.out_truth.open("w") as fh:
        dump_truth(truth, g.labels, fh)


def cmd_detect(args) -> None:
    opts = resolve_options(args)
    cfg = build_config(opts)
    g = _read_graph(args.graph)
    res = irls_detect(g, args.seed, cfg)
    lines = "".join(f"layer {i} " + " ".join(c) + "\n" for i, c in enumerate(res.labelled(g), start=1))
    meta = {
        "graph": str(args.graph),
        "seed": args.seed,
        "n": g.n,
        "m": g.m,
        "options": opts,
        "sizes": [len(c) for c in res.communities],
        "communities": res.labelled(g),
    }
    meta_text = json.dumps(meta, indent=2, sort_keys=True) + "\n"
    if args.out is None:
        sys.stdout.write(lines)
        if args.meta is not None:
            args.meta.write_text(meta_text)
        return
    args.out.write_text(lines)
    (args.meta or args.out.with_name(args.out.name + ".json")).write_text(meta_text)


def cmd_benchmark(args) -> None:
    opts = resolve_options(args)
    cfg = build_config(opts)
    g = _read_graph(args.graph)
    with args.truth.open() as fh:
        truth = load_truth(fh, g)
    seed = opts["rng_seed"] if opts["rng_seed"] is not None else 0
    report = run_benchmark(g, truth, args.method, opts["cases"], cfg, seed, opts["jobs"])
    args.out_csv.write_text(report.to_csv())
    (args.out_json or args.out_csv.with_name(args.out_csv.name + ".json")).write_text(report.to_json())
    if args.out_timing is not None:
        args.out_timing.write_text(report.timing_csv())
    means = " ".join(f"{m:.4f}" for m in report.layer_means)
    print(f"{args.method}: layer means {means}; mean {report.grand_mean:.4f} over {len(report.cases)} cases")


def cmd_theory(args) -> None:
    params = TheoremParams.load(args.params.open())
    if args.check == 1:
        merge, separate = theorem1_check(params)
        out = {"merge_condition": merge, "separate_condition": separate, "merge_threshold_t": merge_threshold(params)}
    else:
        sep, merged = theorem2_check(params)
        out = {"delta_q_separate": sep, "delta_q_merged": merged, "separate_better": sep > merged}
    print(json.dumps(out, sort_keys=True))


def cmd_stats(args) -> None:
    g = _read_graph(args.graph)
    with args.truth.open() as fh:
        truth = load_truth(fh, g)
    st = truth_stats(g, truth)
    print(f"n {st['n']}")
    print(f"m {st['m']}")
    for i, (q, k, s) in enumerate(zip(st["modularity"], st["communities"], st["mean_size"]), start=1):
        print(f"layer {i} modularity {q:.4f} communities {k} mean_size {s:.2f}")
    if args.json is not None:
        args.json.write_text(json.dumps(st, indent=2, sort_keys=True) + "\n")


COMMANDS = {
    "generate": cmd_generate,
    "detect": cmd_detect,
    "benchmark": cmd_benchmark,
    "theory": cmd_theory,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (IrlsError, OSError, ValueError, KeyError, json.JSONDecodeError) as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
