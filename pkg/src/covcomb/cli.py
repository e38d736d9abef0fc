"""Command-line front end.

One flat flag set, dispatched on --cmd: gen writes a seeded random input
matrix, estimate runs any estimator on a file or seeded input, verify
cross-checks all modes pairwise, count prints the closed-form operation
model, simsched sweeps the scheduling simulator, bench times the estimators.
CSV goes to --out when given, stdout otherwise.  Every command is
deterministic for a given flag set and seed; only timing fields vary.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from fractions import Fraction

from . import analysis, baseline, engine, schedsim
from .core import InputMatrix, WindowSpec, max_rel_diff
from .io import read_input_matrix, write_covariance, write_input_matrix

__all__ = ["main", "BENCH_HEADER", "VERIFY_HEADER", "VERIFY_TOL"]

BENCH_HEADER = ["mode", "threads", "N", "M", "P", "Q", "seconds",
                "speedup_vs_naive", "mults", "adds"]
VERIFY_HEADER = ["comparison", "max_rel_diff", "pass"]
VERIFY_TOL = 1e-10

_ALL_MODES = ["naive", engine.MODE_SEQ_DIRECT, engine.MODE_SEQ_OPTIMIZED, engine.MODE_PARALLEL]


class _CliError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covcomb", description=__doc__)
    parser.add_argument("--cmd", required=True,
                        choices=["gen", "estimate", "verify", "count", "simsched", "bench"])
    parser.add_argument("--in", dest="in_path", metavar="PATH",
                        help="input matrix file (alternative to --n/--m/--seed)")
    parser.add_argument("--out", metavar="PATH", help="output file; CSV commands default to stdout")
    parser.add_argument("--n", type=_positive_int, help="input rows")
    parser.add_argument("--m", type=_positive_int, help="input columns")
    parser.add_argument("--p", type=_positive_int, help="window height")
    parser.add_argument("--q", type=_positive_int, help="window width")
    parser.add_argument("--mode", choices=_ALL_MODES, help="estimator (default seq-opt; bench times all)")
    parser.add_argument("--threads", type=_positive_int, default=1)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--batch", type=_positive_int, default=1)
    parser.add_argument("--repeats", type=_positive_int, default=5)
    parser.add_argument("--cores", help="core counts, e.g. 1,2,4,8 or 1..16 (mixable)")
    parser.add_argument("--policy", choices=[schedsim.POLICY_FIFO, schedsim.POLICY_LONGEST],
                        default=schedsim.POLICY_LONGEST)
    parser.add_argument("--backend", choices=["numba", "numpy", "auto"],
                        help="execution path (default: COVCOMB_BACKEND, then numba if importable)")
    parser.add_argument("--trace-out", dest="trace_out", metavar="PATH",
                        help="bench: also write measured per-class costs as a trace CSV")
    parser.add_argument("--costs", metavar="PATH",
                        help="simsched: use a measured cost trace instead of the model")
    return parser


def _require(args, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise _CliError(f"--cmd {args.cmd} requires {', '.join(missing)}")


def _window(args) -> WindowSpec:
    _require(args, "p", "q")
    return WindowSpec(args.p, args.q)


def _load_input(args) -> InputMatrix:
    if args.in_path is not None:
        return read_input_matrix(args.in_path)
    _require(args, "n", "m")
    return InputMatrix.random(args.n, args.m, args.seed)


def _parse_cores(text: str) -> list[int]:
    counts = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo_txt, hi_txt = part.split("..", 1)
            lo, hi = int(lo_txt), int(hi_txt)
            if lo < 1 or hi < lo:
                raise ValueError(f"bad core range {part!r}")
            counts.extend(range(lo, hi + 1))
        else:
            value = int(part)
            if value < 1:
                raise ValueError(f"core counts must be positive, got {part!r}")
            counts.append(value)
    if not counts:
        raise ValueError(f"empty core list {text!r}")
    return counts


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "pass" if value else "fail"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return repr(float(value))
    return str(value)


def _emit_rows(header, rows, out_path) -> None:
    def write(fh):
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])

    if out_path is None:
        write(sys.stdout)
    else:
        with open(out_path, "w", newline="", encoding="utf-8") as fh:
            write(fh)


def _cmd_gen(args) -> int:
    _require(args, "n", "m", "out")
    write_input_matrix(InputMatrix.random(args.n, args.m, args.seed), args.out)
    return 0


def _run_mode(mat, window, mode, args):
    if mode == "naive":
        return baseline.estimate_naive(mat, window, backend=args.backend), None
    cov, counters = engine.estimate_combinations(
        mat, window, mode, threads=args.threads, backend=args.backend
    )
    return cov, counters


def _cmd_estimate(args) -> int:
    _require(args, "out")
    window = _window(args)
    mat = _load_input(args)
    mode = args.mode or engine.MODE_SEQ_OPTIMIZED
    cov, _ = _run_mode(mat, window, mode, args)
    write_covariance(cov, args.out)
    return 0


def _cmd_verify(args) -> int:
    window = _window(args)
    mat = _load_input(args)
    labeled = [("naive", baseline.estimate_naive(mat, window, backend=args.backend).packed)]
    for mode in (engine.MODE_SEQ_DIRECT, engine.MODE_SEQ_OPTIMIZED):
        cov, _ = engine.estimate_combinations(mat, window, mode, backend=args.backend)
        labeled.append((mode, cov.packed))
    cov, _ = engine.estimate_parallel(mat, window, args.threads, backend=args.backend)
    labeled.append((f"par{args.threads}", cov.packed))
    rows = []
    all_pass = True
    for i in range(len(labeled)):
        for j in range(i + 1, len(labeled)):
            diff = max_rel_diff(labeled[i][1], labeled[j][1])
            ok = diff <= VERIFY_TOL
            all_pass &= ok
            rows.append([f"{labeled[i][0]}_vs_{labeled[j][0]}", diff, ok])
    _emit_rows(VERIFY_HEADER, rows, args.out)
    return 0 if all_pass else 1


def _cmd_count(args) -> int:
    _require(args, "n", "m", "p", "q")
    model = analysis.closed_form_counts(args.n, args.m, args.p, args.q)
    _emit_rows(analysis.CSV_HEADER, [model.csv_row()], args.out)
    return 0


def _cmd_simsched(args) -> int:
    window = _window(args)
    _require(args, "cores")
    if args.costs is not None:
        tasks = schedsim.ingest_measured_costs(args.costs, window, args.batch)
    else:
        _require(args, "n", "m")
        tasks = schedsim.model_costs(window, (args.n, args.m), args.batch)
    points = schedsim.sweep(tasks, _parse_cores(args.cores), args.policy)
    rows = [[pt.cores, pt.makespan, pt.speedup, pt.region] for pt in points]
    _emit_rows(schedsim.SWEEP_HEADER, rows, args.out)
    return 0


def _best_time(fn, repeats: int) -> float:
    fn()  # warm: compile, touch caches
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _cmd_bench(args) -> int:
    window = _window(args)
    mat = _load_input(args)
    n, m = mat.n, mat.m
    modes = [args.mode] if args.mode else list(_ALL_MODES)
    naive_seconds = _best_time(
        lambda: baseline.estimate_naive(mat, window, backend=args.backend), args.repeats
    )
    rows = []
    for mode in modes:
        threads = args.threads if mode == engine.MODE_PARALLEL else 1
        if mode == "naive":
            seconds = naive_seconds
            mults, adds = baseline.executed_naive_ops(n, m, window)
        else:
            seconds = _best_time(lambda: _run_mode(mat, window, mode, args), args.repeats)
            _, counters = _run_mode(mat, window, mode, args)
            mults, adds = counters.multiplications, counters.additions
        rows.append([mode, threads, n, m, window.p, window.q, seconds,
                     naive_seconds / seconds, mults, adds])
    _emit_rows(BENCH_HEADER, rows, args.out)
    if args.trace_out is not None:
        timed = engine.measure_combination_times(
            mat, window, backend=args.backend, repeats=max(3, args.repeats)
        )
        schedsim.write_cost_trace(args.trace_out, timed)
    return 0


_DISPATCH = {
    "gen": _cmd_gen,
    "estimate": _cmd_estimate,
    "verify": _cmd_verify,
    "count": _cmd_count,
    "simsched": _cmd_simsched,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.cmd](args)
    except (_CliError, ValueError, OSError, RuntimeError) as exc:
        print(f"covcomb: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
