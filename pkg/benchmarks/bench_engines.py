#!/usr/bin/env python3
"""Benchmark the compiled simulation kernel against the pure-Python
reference engine and verify their traces are bit-identical.

Usage: python benchmarks/bench_engines.py [--ticks N] [--repeat K]
"""

import argparse
import time

import numpy as np

import slicelab
from slicelab import SimConfig, SymbolUniverse, run
from slicelab.simulator import TRACE_COLUMNS

CASES = {
    "stationary (lam=10, mu=34)": dict(
        universe=SymbolUniverse(n_s=0, n_a=500, n_c=350, n_1=50, n_2=100),
        p_c=0.141429, p_a=0.198, lam=10.0, mu=34.0, strategy="heuristic"),
    "boundary (lam=10, mu=35)": dict(
        universe=SymbolUniverse(n_s=0, n_a=500, n_c=350, n_1=50, n_2=100),
        p_c=50 / 350, p_a=100 / 500, lam=10.0, mu=35.0, strategy="heuristic"),
    "light load (lam=2, mu=5)": dict(
        universe=SymbolUniverse(n_s=0, n_a=1000, n_c=1000, n_1=1, n_2=1),
        p_c=0.0, p_a=0.0, lam=2.0, mu=5.0, strategy="fcfs"),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return result, min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ticks", type=int, default=5000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    if slicelab.DEFAULT_BACKEND != slicelab.BACKEND_COMPILED:
        print("compiled kernel not built; nothing to compare against")
        return 1

    print(f"{args.ticks} ticks per run, best of {args.repeat}\n")
    print(f"{'case':<28} {'python':>10} {'compiled':>10} {'speedup':>8}  identical")
    for name, params in CASES.items():
        cfg = SimConfig(ticks=args.ticks, runs=1, seed=args.seed,
                        window_start=1, window_end=args.ticks, **params)
        trace_py, t_py = best_of(lambda: run(cfg, backend="python"), args.repeat)
        trace_c, t_c = best_of(lambda: run(cfg, backend="compiled"), args.repeat)
        same = all(np.array_equal(trace_py.column(col), trace_c.column(col))
                   for col in TRACE_COLUMNS)
        print(f"{name:<28} {t_py * 1e3:>8.1f}ms {t_c * 1e3:>8.1f}ms "
              f"{t_py / t_c:>7.1f}x  {same}")
        if not same:
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
