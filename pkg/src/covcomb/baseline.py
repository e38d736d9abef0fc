"""Reference estimator: slide the window, stack its columns, accumulate the
rank-one outer products.

Deliberately direct and single-threaded; every optimized path in the engine
is checked against it.
"""

from __future__ import annotations

from . import analysis
from . import backend as _backend
from .core import CovarianceMatrix, WindowSpec, as_input_matrix, packed_size

__all__ = [
    "window_positions",
    "estimate_naive",
    "count_naive_ops",
    "executed_naive_ops",
]


def window_positions(n: int, m: int, window: WindowSpec) -> list[tuple[int, int]]:
    """Top-left anchors of every in-bounds placement, row-major.

    Placements are inclusive: (p, q) with p in [1, n-P+1], q in [1, m-Q+1].
    """
    window.validate_for(n, m)
    return [
        (wr, wc)
        for wr in range(1, n - window.p + 2)
        for wc in range(1, m - window.q + 2)
    ]


def estimate_naive(a, window: WindowSpec, backend: str | None = None) -> CovarianceMatrix:
    """Sum V * conj(V)^T over every placement, upper triangle only."""
    mat = as_input_matrix(a)
    window.validate_for(mat.n, mat.m)
    backend_name = _backend.resolve_backend(backend)
    cov = CovarianceMatrix(window.stack_size)
    if backend_name == _backend.NUMBA:
        from . import _numba_kernels as kernels
    else:
        from . import _numpy_kernels as kernels
    kernels.naive_packed(mat.array, window.p, window.q, cov.packed)
    return cov


def count_naive_ops(n: int, m: int, p: int, q: int) -> tuple[int, int]:
    """Closed-form model counts of the serial sweep: ((n-p)(m-q)p^2q^2,
    same).

    These use the exclusive window factor of the analysis model; see
    executed_naive_ops for what estimate_naive actually spends.
    """
    return analysis.serial_op_counts(n, m, p, q)


def executed_naive_ops(n: int, m: int, window: WindowSpec) -> tuple[int, int]:
    """Operations estimate_naive really executes: inclusive placements,
    triangle entries only."""
    window.validate_for(n, m)
    placements = (n - window.p + 1) * (m - window.q + 1)
    tri = packed_size(window.stack_size)
    return placements * tri, placements * tri
