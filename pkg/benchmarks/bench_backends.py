"""Time the numba kernels against the pure-numpy fallbacks and verify that
both produce identical results.

Usage: python benchmarks/bench_backends.py [--months N] [--repeats R]
"""

from __future__ import annotations

import argparse
import dataclasses
import time

import polisim.goods_market as gm
import polisim.labor_market as lm
from polisim.config import load_config
from polisim.kernels import get_backend
from polisim.rng import derive_run_stream
from polisim.scheduler import run_simulation
from polisim.space import build_partition
from polisim.worldgen import generate_world


def run_with(impl, months: int, seed: int):
    gm.kernels.goods_market_month = impl.goods_market_month
    lm.kernels.match_labor = impl.match_labor
    sim, model = load_config()
    sim = dataclasses.replace(sim, num_days=21 * months, seed=seed, num_regions=4)
    stream = derive_run_stream(sim.seed, 0)
    world = generate_world(sim, model, build_partition(4), stream)
    started = time.perf_counter()
    result = run_simulation(world, sim, model, stream)
    return time.perf_counter() - started, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--months", type=int, default=120)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    numpy_impl = get_backend("numpy")
    try:
        numba_impl = get_backend("numba")
    except ImportError:
        numba_impl = None
        print("numba not installed; timing the numpy path only")

    backends = [("numpy", numpy_impl)]
    if numba_impl is not None:
        # warm the JIT cache outside the timed region
        run_with(numba_impl, 2, seed=0)
        backends.append(("numba", numba_impl))

    results = {}
    timings = {}
    for name, impl in backends:
        best = float("inf")
        for rep in range(args.repeats):
            elapsed, result = run_with(impl, args.months, seed=7)
            best = min(best, elapsed)
        results[name] = result
        timings[name] = best
        print(f"{name:6s}: {best:7.2f}s best of {args.repeats} ({args.months} months, 4 regions)")

    if numba_impl is not None:
        same = (results["numpy"].series == results["numba"].series
                and results["numpy"].regions == results["numba"].regions)
        print(f"outputs identical: {same}")
        print(f"speedup: {timings['numpy'] / timings['numba']:.2f}x")
        if not same:
            raise SystemExit("backend mismatch")


if __name__ == "__main__":
    main()
