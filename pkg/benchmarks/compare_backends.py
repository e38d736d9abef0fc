"""Time the compiled and pure-numpy execution paths side by side.

Runs naive, seq, seq-opt and par on the same seeded input under every
importable backend and prints one CSV row per (backend, mode), plus the
cross-backend agreement as a relative Frobenius distance.

    python3 benchmarks/compare_backends.py --n 32 --m 32 --p 13 --q 13 --threads 4
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from covcomb.backend import available_backends
from covcomb.baseline import estimate_naive
from covcomb.core import InputMatrix, WindowSpec, rel_frobenius_distance
from covcomb.engine import (
    MODE_PARALLEL,
    MODE_SEQ_DIRECT,
    MODE_SEQ_OPTIMIZED,
    estimate_combinations,
)

MODES = ["naive", MODE_SEQ_DIRECT, MODE_SEQ_OPTIMIZED, MODE_PARALLEL]


def best_time(fn, repeats: int) -> tuple[float, object]:
    result = fn()  # warm: compile, touch caches
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def run(args) -> int:
    mat = InputMatrix.random(args.n, args.m, args.seed)
    window = WindowSpec(args.p, args.q)
    backends = available_backends()
    writer = csv.writer(sys.stdout)
    writer.writerow(["backend", "mode", "threads", "seconds", "speedup_vs_naive"])
    reference = {}
    for backend in backends:
        def call(mode):
            if mode == "naive":
                return lambda: estimate_naive(mat, window, backend=backend)
            threads = args.threads if mode == MODE_PARALLEL else 1
            return lambda: estimate_combinations(
                mat, window, mode, threads=threads, backend=backend
            )[0]

        t_naive, cov = best_time(call("naive"), args.repeats)
        reference[backend] = cov.packed
        writer.writerow([backend, "naive", 1, repr(t_naive), "1.0"])
        for mode in MODES[1:]:
            threads = args.threads if mode == MODE_PARALLEL else 1
            seconds, cov = best_time(call(mode), args.repeats)
            writer.writerow([backend, mode, threads, repr(seconds), repr(t_naive / seconds)])
    if len(backends) == 2:
        drift = rel_frobenius_distance(reference[backends[0]], reference[backends[1]])
        print(f"# cross-backend naive agreement: rel Frobenius {drift:.3e}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=32)
    parser.add_argument("--m", type=int, default=32)
    parser.add_argument("--p", type=int, default=13)
    parser.add_argument("--q", type=int, default=13)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--threads", type=int, default=4)
    parser.add_argument("--repeats", type=int, default=5)
    return run(parser.parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
