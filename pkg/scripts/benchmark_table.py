"""Mean per-layer F1 of each method on the built-in synthetic datasets.

    python3 scripts/benchmark_table.py --datasets SynL2_2 SynL2_3 --cases 20
    python3 scripts/benchmark_table.py --nodes 6000 --cases 10   # quick, rescaled

Writes one CSV row per (dataset, method) and prints a table.
"""

import argparse
import csv
import sys
import time

from irls import IrlsConfig, generate, potential_seeds, preset, run_benchmark
from irls.evaluation import METHODS, choose_seeds
from irls.synth import PRESETS


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--datasets", nargs="+", default=sorted(PRESETS), choices=sorted(PRESETS))
    ap.add_argument("--methods", nargs="+", default=list(METHODS), choices=METHODS)
    ap.add_argument("--cases", type=int, default=20)
    ap.add_argument("--nodes", type=int, help="rescale every dataset to this many nodes")
    ap.add_argument("--iterations", type=int, default=10)
    ap.add_argument("--rng-seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="benchmark_table.csv")
    args = ap.parse_args(argv)

    rows = []
    for name in args.datasets:
        t0 = time.perf_counter()
        g, truth = generate(preset(name, args.rng_seed, args.nodes))
        cfg = IrlsConfig(len(truth.layers), args.iterations)
        # same seeds for every method
        seeds = choose_seeds(potential_seeds(truth, g, cfg.losp.n_set), args.cases, args.rng_seed)
        print(f"{name}: n={g.n} m={g.m} generated in {time.perf_counter() - t0:.1f}s", file=sys.stderr)
        for method in args.methods:
            t0 = time.perf_counter()
            rep = run_benchmark(g, truth, method, args.cases, cfg, args.rng_seed, args.jobs, seeds)
            secs = time.perf_counter() - t0
            rows.append([name, method, *[f"{x:.4f}" for x in rep.layer_means], f"{rep.grand_mean:.4f}", f"{secs:.1f}"])
            print(f"  {method:10s} " + " ".join(rows[-1][2:]), file=sys.stderr)

    width = max(len(r) for r in rows) - 4
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["dataset", "method", *[f"layer{i + 1}" for i in range(width)], "mean", "seconds"])
        w.writerows(rows)
    for r in rows:
        print(" | ".join(f"{c:>9s}" for c in r))


if __name__ == "__main__":
    main()
