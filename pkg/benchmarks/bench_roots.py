"""Benchmark the root-finder kernels: numba JIT vs the pure-numpy fallback.

The implementation is chosen at import time from POLYSTAB_NO_NUMBA, so this
script re-executes itself once per backend and prints a comparison table.

Usage: python3 benchmarks/bench_roots.py [--repeats N] [--seed S]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

DEGREES = (4, 8, 16, 32, 64)
POLYS_PER_DEGREE = 50


def workload(seed):
    rng = np.random.default_rng(seed)
    batches = {}
    for deg in DEGREES:
        batches[deg] = [
            rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
            for _ in range(POLYS_PER_DEGREE)
        ]
    return batches


def run_backend(repeats, seed):
    from polystab import _kernels

    _kernels.warmup()
    batches = workload(seed)
    timings = {}
    for deg, polys in batches.items():
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            for c in polys:
                _kernels.aberth_roots(c)
            best = min(best, time.perf_counter() - t0)
        timings[deg] = best / len(polys)
    return {"backend": "numba" if _kernels.USE_NUMBA else "numpy",
            "per_poly_s": timings}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.child:
        print(json.dumps(run_backend(args.repeats, args.seed)))
        return

    results = {}
    for no_numba in ("0", "1"):
        env = dict(os.environ, POLYSTAB_NO_NUMBA=no_numba)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--child",
             "--repeats", str(args.repeats), "--seed", str(args.seed)],
            env=env, capture_output=True, text=True, check=True)
        data = json.loads(proc.stdout.strip().splitlines()[-1])
        results[data["backend"]] = data["per_poly_s"]

    if set(results) != {"numba", "numpy"}:
        print("warning: numba backend unavailable; numpy timings only")
        for deg, t in sorted(results.get("numpy", {}).items(), key=lambda kv: int(kv[0])):
            print(f"degree {deg:>3}: numpy {t * 1e6:9.1f} us/poly")
        return

    print(f"{POLYS_PER_DEGREE} random polynomials per degree, best of "
          f"{args.repeats} repeats")
    print(f"{'degree':>6} {'numba us/poly':>14} {'numpy us/poly':>14} {'speedup':>8}")
    for deg in DEGREES:
        tn = results["numba"][str(deg)]
        tp = results["numpy"][str(deg)]
        print(f"{deg:>6} {tn * 1e6:>14.1f} {tp * 1e6:>14.1f} {tp / tn:>8.2f}x")


if __name__ == "__main__":
    main()
