"""Time the full cascade with the numba kernel and with the numpy kernel.

    python benchmarks/bench_backends.py [--sizes 64,128,256,512] [--repeats 3]

Two weight families are timed: uniform random weights, and a "sink" family
where every vertex prefers vertex 0 so one tree keeps growing and each step
runs Chu-Liu-Edmonds on the largest possible vertex set.
"""

import argparse
import time

import numpy as np

from relforest import HAVE_NUMBA, WeightedDigraph, run


def uniform(rng, n):
    return WeightedDigraph.from_matrix(rng.random((n, n)))


def sink(rng, n):
    return WeightedDigraph.from_matrix(np.arange(n)[None, :] + 0.01 * rng.random((n, n)))


def best_of(g, backend, repeats):
    best = float("inf")
    for _ in range(repeats):
        t = time.perf_counter()
        run(g, backend=backend, check=False)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="64,128,256,512")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    rng = np.random.default_rng(args.seed)
    for backend in backends:
        run(uniform(rng, 16), backend=backend)  # JIT warm-up

    print(f"{'family':8} {'N':>5} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, family in (("uniform", uniform), ("sink", sink)):
        for n in sizes:
            g = family(rng, n)
            times = [best_of(g, b, args.repeats) for b in backends]
            speed = f"{times[0] / times[-1]:8.2f}x" if len(times) > 1 else ""
            print(f"{name:8} {n:5d} " + " ".join(f"{t:10.4f}" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
