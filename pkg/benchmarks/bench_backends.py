"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the elementwise NI paths on a random batch and the exhaustive
closed-vs-direct sweep at a configurable cap, once per backend, and prints
the timings plus the speedup.

    python benchmarks/bench_backends.py --cap 120 --batch 2000000
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from nimetrics._kernels import numpy_impl

try:
    from nimetrics._kernels import numba_impl
except ImportError:
    numba_impl = None


def bench(func, *args, repeat: int = 3, warmup: bool = True) -> float:
    if warmup:
        func(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def random_cells(n: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    return tuple(rng.integers(0, 60, size=n).astype(np.float64) for _ in range(4))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cap", type=int, default=120,
                        help="total-count cap for the exhaustive sweep")
    parser.add_argument("--envelope-cap", type=int, default=40,
                        help="class-size-sum cap for the envelope sweep")
    parser.add_argument("--batch", type=int, default=2_000_000,
                        help="batch size for the elementwise kernels")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    cells = random_cells(args.batch)
    backends = [("numpy", numpy_impl)]
    if numba_impl is not None:
        backends.append(("numba", numba_impl))
    else:
        print("numba not importable; benchmarking the fallback only")

    jobs = [
        ("ni_direct  [batch]", lambda impl: impl.ni_direct(*cells)),
        ("ni_closed  [batch]", lambda impl: impl.ni_closed(*cells)),
        ("sweep_compare", lambda impl: impl.sweep_compare(args.cap)),
        ("envelope_sweep", lambda impl: impl.envelope_sweep(args.envelope_cap)),
    ]
    results: dict[tuple[str, str], float] = {}
    for bname, impl in backends:
        for jname, job in jobs:
            results[(jname, bname)] = bench(job, impl, repeat=args.repeat)

    print(f"batch={args.batch:,}  sweep cap={args.cap}  "
          f"envelope cap={args.envelope_cap}  (best of {args.repeat})")
    header = f"{'kernel':<20} {'numpy [s]':>12} {'numba [s]':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for jname, _ in jobs:
        t_np = results[(jname, "numpy")]
        t_nb = results.get((jname, "numba"))
        if t_nb is None:
            print(f"{jname:<20} {t_np:>12.4f} {'-':>12} {'-':>9}")
        else:
            print(f"{jname:<20} {t_np:>12.4f} {t_nb:>12.4f} {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
