"""Compiled hot loops.  Index conventions follow core: logical 1-based,
storage 0-based, packed upper triangle row-major.

All kernels release the GIL so the engine can drive them from plain threads;
class kernels write disjoint packed slots, so no synchronization is needed.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def naive_packed(a, p, q, out):
    # One stacked window vector per placement, triangle accumulated row-major.
    n, m = a.shape
    pq = p * q
    v = np.empty(pq, dtype=np.complex128)
    for wr in range(n - p + 1):
        for wc in range(m - q + 1):
            k = 0
            for cc in range(q):
                for rr in range(p):
                    v[k] = a[wr + rr, wc + cc]
                    k += 1
            idx = 0
            for i in range(pq):
                vi = v[i]
                for j in range(i, pq):
                    out[idx] += vi * np.conj(v[j])
                    idx += 1


@njit(cache=True, nogil=True)
def combination_direct(a, dr, dc, p, q, out):
    # Walk every pair of one class; its product lands once per containing
    # window, directly on the packed diagonal d = dc*p + dr.
    n, m = a.shape
    pq = p * q
    d = dc * p + dr
    r_lo = 1 if dr >= 0 else 1 - dr
    r_hi = n - dr if dr >= 0 else n
    for r1 in range(r_lo, r_hi + 1):
        r2 = r1 + dr
        rmin = r1 if dr >= 0 else r2
        rmax = r2 if dr >= 0 else r1
        wr_lo = max(1, rmax - p + 1)
        wr_hi = min(rmin, n - p + 1)
        for c1 in range(1, m - dc + 1):
            c2 = c1 + dc
            wc_lo = max(1, c2 - q + 1)
            wc_hi = min(c1, m - q + 1)
            val = a[r1 - 1, c1 - 1] * np.conj(a[r2 - 1, c2 - 1])
            for wc in range(wc_hi, wc_lo - 1, -1):
                row_base = p * (c1 - wc) + r1 + 1
                for wr in range(wr_hi, wr_lo - 1, -1):
                    row = row_base - wr
                    out[(row - 1) * pq - (row - 1) * (row - 2) // 2 + d] += val


@njit(cache=True, nogil=True)
def combination_scratch(a, dr, dc, p, q, out, scratch, pane):
    # Same sums as combination_direct, staged through two small contiguous
    # buffers: the class's pairwise products (a view of the caller-held
    # pane), then per-slot box sums of them (slot (u, v) collects a
    # fixed-size (n-p+1) x (m-q+1) box anchored at (v - v_min, u)).
    # Sequential reads keep the adds streaming instead of scattering.  Per
    # slot the addition order equals combination_direct's, so the two modes
    # agree bit for bit; every slot receives at least one pair, so the
    # final scatter may assign instead of accumulate.
    n, m = a.shape
    pq = p * q
    d = dc * p + dr
    adr = -dr if dr < 0 else dr
    ph = p - adr
    qw = q - dc
    rows = n - adr
    cols = m - dc
    prod = pane[: rows * cols].reshape(rows, cols)
    if dr >= 0:
        for i in range(rows):
            for j in range(cols):
                prod[i, j] = a[i, j] * np.conj(a[i + dr, j + dc])
    else:
        for i in range(rows):
            for j in range(cols):
                prod[i, j] = a[i + adr, j] * np.conj(a[i, j + dc])
    bh = n - p + 1
    bw = m - q + 1
    k = 0
    for u in range(qw):
        for v0 in range(ph):
            acc = 0.0 + 0.0j
            for i in range(v0, v0 + bh):
                for j in range(u, u + bw):
                    acc += prod[i, j]
            scratch[k] = acc
            k += 1
    v_min = 1 + adr if dr < 0 else 1
    k = 0
    for u in range(qw):
        row0 = p * u + v_min - 1
        for vv in range(ph):
            row = row0 + vv
            out[row * pq - row * (row - 1) // 2 + d] = scratch[k]
            k += 1


def warmup() -> None:
    """Compile (or load from cache) every kernel on a toy problem."""
    a = np.zeros((3, 3), dtype=np.complex128)
    out = np.zeros(10, dtype=np.complex128)
    scratch = np.zeros(4, dtype=np.complex128)
    pane = np.zeros(9, dtype=np.complex128)
    naive_packed(a, 2, 2, out)
    combination_direct(a, 0, 0, 2, 2, out)
    combination_scratch(a, 0, 0, 2, 2, out, scratch, pane)
    combination_scratch(a, -1, 1, 2, 2, out, scratch, pane)
