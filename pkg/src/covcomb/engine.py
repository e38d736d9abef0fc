"""Estimation engine: the class decomposition in direct sequential,
locality-staged sequential, thread-parallel and multi-matrix batch forms.

Parallelism needs no locks or atomics on the shared output: every class owns
a disjoint set of packed slots (the suite checks this exhaustively), so
workers write without coordination and the result is independent of thread
count and interleaving, per packed entry, bit for bit.  Workers pull
(matrix, class) tasks from a shared cursor, largest modeled cost first by
default, so stragglers start early.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass

import numpy as np

from . import backend as _backend
from . import combinations as _comb
from .core import CovarianceMatrix, InputMatrix, WindowSpec, as_input_matrix

__all__ = [
    "MODE_SEQ_DIRECT",
    "MODE_SEQ_OPTIMIZED",
    "MODE_PARALLEL",
    "OpCounters",
    "estimate_combinations",
    "estimate_seq_direct",
    "estimate_seq_optimized",
    "estimate_parallel",
    "estimate_batch",
    "measure_combination_times",
]

MODE_SEQ_DIRECT = "seq"
MODE_SEQ_OPTIMIZED = "seq-opt"
MODE_PARALLEL = "par"


@dataclass(frozen=True)
class OpCounters:
    """Exact complex-operation counts for one estimate.

    per_combination lists (class, multiplications, additions) in enumeration
    order; the totals are their sums.  Addition counts are backend-specific:
    the compiled path accumulates once per (pair, containing window), the
    numpy path pays two prefix-sum passes plus three combines per slot.
    """

    multiplications: int
    additions: int
    per_combination: tuple

    @classmethod
    def tally(cls, combos, window: WindowSpec, n: int, m: int, backend_name: str):
        placements = (n - window.p + 1) * (m - window.q + 1)
        per = []
        for comb in combos:
            mults = _comb.pair_count(comb, n, m)
            if backend_name == _backend.NUMPY:
                from . import _numpy_kernels

                adds = _numpy_kernels.combination_add_count(
                    n, m, comb.dr, comb.dc, window.p, window.q
                )
            else:
                adds = placements * _comb.max_writes(comb, window)
            per.append((comb, mults, adds))
        return cls(
            multiplications=sum(row[1] for row in per),
            additions=sum(row[2] for row in per),
            per_combination=tuple(per),
        )


def _load_kernels(backend_name: str):
    if backend_name == _backend.NUMBA:
        from . import _numba_kernels as kernels
    else:
        from . import _numpy_kernels as kernels
    return kernels


def _modeled_cost(comb, window: WindowSpec, n: int, m: int) -> int:
    # One multiply plus up to max_writes additions per pair.
    return _comb.pair_count(comb, n, m) * (1 + _comb.max_writes(comb, window))


def _dispatch_order(combos, window: WindowSpec, n: int, m: int):
    return sorted(combos, key=lambda c: -_modeled_cost(c, window, n, m))


def _run_class(kernels, backend_name, arr, comb, window, out, scratch, pane):
    if backend_name == _backend.NUMBA:
        kernels.combination_scratch(
            arr, comb.dr, comb.dc, window.p, window.q, out, scratch, pane
        )
    else:
        kernels.apply_combination(arr, comb.dr, comb.dc, window.p, window.q, out)


def _max_scratch(combos, window: WindowSpec) -> int:
    return max(_comb.max_writes(c, window) for c in combos)


def estimate_combinations(
    a,
    window: WindowSpec,
    mode: str = MODE_SEQ_DIRECT,
    threads: int = 1,
    backend: str | None = None,
    sorted_dispatch: bool = True,
) -> tuple[CovarianceMatrix, OpCounters]:
    """Estimate the windowed covariance via the class decomposition.

    mode selects direct sequential ("seq"), staged sequential ("seq-opt") or
    thread-parallel ("par", using `threads` workers).  Returns the packed
    estimate and its exact operation counters.
    """
    if mode == MODE_PARALLEL:
        return estimate_parallel(a, window, threads, backend=backend, sorted_dispatch=sorted_dispatch)
    if mode not in (MODE_SEQ_DIRECT, MODE_SEQ_OPTIMIZED):
        raise ValueError(f"unknown mode {mode!r}")
    mat = as_input_matrix(a)
    window.validate_for(mat.n, mat.m)
    backend_name = _backend.resolve_backend(backend)
    kernels = _load_kernels(backend_name)
    combos = _comb.unique_combinations(window)
    cov = CovarianceMatrix(window.stack_size)
    if backend_name == _backend.NUMBA and mode == MODE_SEQ_DIRECT:
        for comb in combos:
            kernels.combination_direct(
                mat.array, comb.dr, comb.dc, window.p, window.q, cov.packed
            )
    else:
        # The numpy path is always staged; its direct and optimized modes
        # coincide by construction.
        scratch = np.empty(_max_scratch(combos, window), dtype=np.complex128)
        pane = np.empty(mat.n * mat.m, dtype=np.complex128)
        for comb in combos:
            _run_class(
                kernels, backend_name, mat.array, comb, window, cov.packed, scratch, pane
            )
    counters = OpCounters.tally(combos, window, mat.n, mat.m, backend_name)
    return cov, counters


def estimate_seq_direct(a, window: WindowSpec, backend: str | None = None):
    return estimate_combinations(a, window, MODE_SEQ_DIRECT, backend=backend)


def estimate_seq_optimized(a, window: WindowSpec, backend: str | None = None):
    return estimate_combinations(a, window, MODE_SEQ_OPTIMIZED, backend=backend)


def _run_pool(arr_for, out_for, tasks, window, threads, backend_name, kernels, combos, nm):
    """Drive (matrix, class) tasks through a shared-cursor thread pool."""
    cursor = 0
    cursor_lock = threading.Lock()
    failures = []
    scratch_size = _max_scratch(combos, window)

    def worker():
        nonlocal cursor
        scratch = np.empty(scratch_size, dtype=np.complex128)
        pane = np.empty(nm, dtype=np.complex128)
        try:
            while True:
                with cursor_lock:
                    i = cursor
                    cursor += 1
                if i >= len(tasks):
                    return
                mat_idx, comb = tasks[i]
                _run_class(
                    kernels, backend_name, arr_for(mat_idx), comb, window,
                    out_for(mat_idx), scratch, pane,
                )
        except BaseException as exc:  # surfaced after join
            failures.append(exc)

    pool = [threading.Thread(target=worker, name=f"covcomb-{k}") for k in range(threads)]
    for t in pool:
        t.start()
    for t in pool:
        t.join()
    if failures:
        raise failures[0]


def estimate_parallel(
    a,
    window: WindowSpec,
    threads: int = 1,
    backend: str | None = None,
    sorted_dispatch: bool = True,
) -> tuple[CovarianceMatrix, OpCounters]:
    """Thread-parallel estimate; any thread count yields bit-identical output."""
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    mat = as_input_matrix(a)
    window.validate_for(mat.n, mat.m)
    backend_name = _backend.resolve_backend(backend)
    kernels = _load_kernels(backend_name)
    combos = _comb.unique_combinations(window)
    order = _dispatch_order(combos, window, mat.n, mat.m) if sorted_dispatch else combos
    cov = CovarianceMatrix(window.stack_size)
    tasks = [(0, comb) for comb in order]
    _run_pool(
        lambda _i: mat.array, lambda _i: cov.packed, tasks, window, threads,
        backend_name, kernels, combos, mat.n * mat.m,
    )
    counters = OpCounters.tally(combos, window, mat.n, mat.m, backend_name)
    return cov, counters


def estimate_batch(
    matrices,
    window: WindowSpec,
    threads: int = 1,
    backend: str | None = None,
    sorted_dispatch: bool = True,
) -> list[CovarianceMatrix]:
    """Estimate several same-sized matrices through one shared task pool.

    The pool holds len(matrices) * classes tasks, so thread utilization
    improves even when a single matrix has too few heavy classes to go
    around.  Outputs match per-matrix estimates bit for bit.
    """
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    mats = [as_input_matrix(x) for x in matrices]
    if not mats:
        raise ValueError("batch must contain at least one matrix")
    n, m = mats[0].n, mats[0].m
    for mat in mats[1:]:
        if mat.n != n or mat.m != m:
            raise ValueError(
                f"batch matrices must share dimensions; got {n}x{m} and {mat.n}x{mat.m}"
            )
    window.validate_for(n, m)
    backend_name = _backend.resolve_backend(backend)
    kernels = _load_kernels(backend_name)
    combos = _comb.unique_combinations(window)
    order = _dispatch_order(combos, window, n, m) if sorted_dispatch else combos
    covs = [CovarianceMatrix(window.stack_size) for _ in mats]
    # Class-major so equally expensive tasks interleave across matrices.
    tasks = [(idx, comb) for comb in order for idx in range(len(mats))]
    _run_pool(
        lambda i: mats[i].array, lambda i: covs[i].packed, tasks, window, threads,
        backend_name, kernels, combos, n * m,
    )
    return covs


def measure_combination_times(
    a,
    window: WindowSpec,
    backend: str | None = None,
    repeats: int = 3,
) -> list[tuple[_comb.Combination, float]]:
    """Best-of-repeats wall time of each class kernel, in enumeration order.

    The result feeds the scheduling simulator with measured instead of
    modeled costs.
    """
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    mat = as_input_matrix(a)
    window.validate_for(mat.n, mat.m)
    backend_name = _backend.resolve_backend(backend)
    kernels = _load_kernels(backend_name)
    combos = _comb.unique_combinations(window)
    out = CovarianceMatrix(window.stack_size).packed
    scratch = np.empty(_max_scratch(combos, window), dtype=np.complex128)
    pane = np.empty(mat.n * mat.m, dtype=np.complex128)
    _run_class(kernels, backend_name, mat.array, combos[0], window, out, scratch, pane)  # warm
    timed = []
    for comb in combos:
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            _run_class(kernels, backend_name, mat.array, comb, window, out, scratch, pane)
            best = min(best, time.perf_counter() - t0)
        timed.append((comb, best))
    return timed
