"""Vectorized fallback for the hot loops, used when numba is unavailable or
when COVCOMB_BACKEND=numpy.

A class's per-slot sums are box sums of a shifted elementwise product: slot
(u, v) collects the product over a fixed-size (n-p+1) x (m-q+1) box of first
elements anchored at (v - v_min, u).  All boxes share one padded 2-D prefix
sum, so a whole class costs O(n*m) regardless of how many slots it owns, and
the multiplication count stays exactly (n-|dr|)(m-|dc|).
"""

from __future__ import annotations

import numpy as np


def naive_packed(a, p, q, out):
    n, m = a.shape
    rows, cols = np.triu_indices(p * q)
    diag = rows == cols
    for wr in range(n - p + 1):
        for wc in range(m - q + 1):
            v = a[wr:wr + p, wc:wc + q].ravel(order="F")
            prod = v[rows] * np.conj(v[cols])
            # numpy's SIMD complex multiply contracts to FMA, leaving a tiny
            # imaginary residue on self-products that are exactly real
            prod[diag] = prod[diag].real
            out += prod


def class_block_sums(a, dr, dc, p, q) -> np.ndarray:
    """Per-slot sums of one class, flat in slot order (strip u major)."""
    n, m = a.shape
    adr = abs(dr)
    if dr == 0 and dc == 0:
        # self-products are exactly real; the FMA-contracted complex multiply
        # would leave an imaginary residue on what becomes the main diagonal
        prod = (a.real * a.real + a.imag * a.imag) + 0j
    elif dr >= 0:
        prod = a[: n - dr, : m - dc] * np.conj(a[dr:, dc:])
    else:
        prod = a[adr:, : m - dc] * np.conj(a[: n - adr, dc:])
    sat = np.zeros((prod.shape[0] + 1, prod.shape[1] + 1), dtype=np.complex128)
    sat[1:, 1:] = prod.cumsum(axis=0).cumsum(axis=1)
    bh, bw = n - p + 1, m - q + 1
    r0 = np.arange(p - adr)
    c0 = np.arange(q - dc)
    sums = (
        sat[np.ix_(r0 + bh, c0 + bw)]
        - sat[np.ix_(r0, c0 + bw)]
        - sat[np.ix_(r0 + bh, c0)]
        + sat[np.ix_(r0, c0)]
    )
    return sums.T.ravel()


def class_packed_offsets(dr, dc, p, q) -> np.ndarray:
    """Packed 0-based offsets of the class's slots, flat in slot order."""
    adr = abs(dr)
    pq = p * q
    v_min = 1 + adr if dr < 0 else 1
    u = np.arange(q - dc)
    v = np.arange(v_min, v_min + p - adr)
    r0 = (p * u[:, None] + v[None, :]).ravel() - 1
    return r0 * pq - r0 * (r0 - 1) // 2 + (dc * p + dr)


def apply_combination(a, dr, dc, p, q, out):
    out[class_packed_offsets(dr, dc, p, q)] = class_block_sums(a, dr, dc, p, q)


def combination_add_count(n, m, dr, dc, p, q) -> int:
    """Complex additions class_block_sums performs: two cumsum passes plus
    three combining adds per slot."""
    rows, cols = n - abs(dr), m - dc
    slots = (p - abs(dr)) * (q - dc)
    return (rows - 1) * cols + rows * (cols - 1) + 3 * slots
