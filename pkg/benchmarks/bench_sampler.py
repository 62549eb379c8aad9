"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_sampler.py [--trials N] [--repeat R]

Both backends consume the same seeds, so the outputs are also compared.
"""
import argparse
import time

import numpy as np

from ust import kernels
from ust._tables import POISSON1_CDF
from ust.graph import generate_family
from ust.sampler import _walk_arrays, trial_seeds


def best_of(repeat, fn):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    try:
        fast = kernels.get_backend("cython")
    except RuntimeError:
        raise SystemExit("compiled kernels are not built; run pip install --no-build-isolation -e .")
    slow = kernels.get_backend("python")
    seeds = trial_seeds(2024, args.trials)

    cases = []
    for family, n in [("cycle", 5), ("torus", 4), ("grid", 8)]:
        arrays = _walk_arrays(generate_family(family, n))
        cases.append((f"walk_trees {family}({n})", lambda k, a=arrays: k.walk_trees(*a, 0, seeds)))
    cases.append(("gw_level_sizes depth 50", lambda k: k.gw_level_sizes(seeds, 50, POISSON1_CDF, 1_000_000)))

    print(f"{'kernel':<28}{'python s':>11}{'cython s':>11}{'speedup':>10}  same")
    for name, run in cases:
        tp, out_p = best_of(args.repeat, lambda: run(slow))
        tc, out_c = best_of(args.repeat, lambda: run(fast))
        same = np.array_equal(out_p, out_c)
        print(f"{name:<28}{tp:>11.4f}{tc:>11.4f}{tp / tc:>9.1f}x  {same}")


if __name__ == "__main__":
    main()
