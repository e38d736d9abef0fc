"""Domain types and index conventions for sliding-window covariance estimation.

Logical indices are 1-based throughout the package: input elements are
addressed as A(r, c) with r in [1, N], stacked window vectors as V(1..P*Q),
and output entries as C(row, col).  Physical numpy storage stays 0-based; the
conversion happens only inside the accessors and offset helpers below.

The output matrix is Hermitian, so only its upper triangle (main diagonal
included) is stored, packed row-major within the triangle.  Scalars are plain
complex128; conjugation and |z|^2 come straight from numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAX_PACKED_ENTRIES",
    "WindowSpec",
    "InputMatrix",
    "CovarianceMatrix",
    "as_input_matrix",
    "column_stack_index",
    "packed_offset",
    "packed_size",
    "max_rel_diff",
    "rel_frobenius_distance",
]

# Refuse absurd output allocations before numpy attempts them; this also keeps
# every packed offset comfortably inside exact int64 arithmetic in the kernels.
MAX_PACKED_ENTRIES = 2**31 - 1


def column_stack_index(r_rel: int, c_rel: int, p: int, q: int | None = None) -> int:
    """Position of window element (r_rel, c_rel) in the column-stacked vector.

    Window columns are stacked top-to-bottom, left-to-right: (1, 1) -> 1,
    (p, 1) -> p, (1, 2) -> p + 1, ..., (p, q) -> p*q.  The width bound is
    checked only when q is given; the stack position itself does not need it.
    """
    if p < 1:
        raise IndexError(f"window height must be >= 1, got {p}")
    if not 1 <= r_rel <= p:
        raise IndexError(f"relative row {r_rel} outside window of height {p}")
    if c_rel < 1 or (q is not None and c_rel > q):
        raise IndexError(f"relative column {c_rel} outside window of width {q}")
    return p * (c_rel - 1) + r_rel


def packed_size(dim: int) -> int:
    """Entries in the packed upper triangle of a dim x dim matrix."""
    if dim < 1:
        raise ValueError(f"matrix dimension must be >= 1, got {dim}")
    return dim * (dim + 1) // 2


def packed_offset(r: int, c: int, dim: int) -> int:
    """0-based offset of upper-triangle entry (r, c), r <= c, in packed storage.

    The triangle is laid out row-major: row 1 contributes dim entries, row 2
    contributes dim - 1, and so on.
    """
    if r < 1 or c > dim:
        raise IndexError(f"({r}, {c}) outside a {dim}x{dim} matrix")
    if r > c:
        raise ValueError(
            f"({r}, {c}) lies in the lower triangle; read ({c}, {r}) and conjugate"
        )
    return (r - 1) * dim - (r - 1) * (r - 2) // 2 + (c - r)


@dataclass(frozen=True)
class WindowSpec:
    """Sliding window dimensions: height p, width q."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise ValueError(f"window dimensions must be positive, got {self.p}x{self.q}")

    @property
    def stack_size(self) -> int:
        """Length of the column-stacked window vector."""
        return self.p * self.q

    def validate_for(self, n: int, m: int) -> None:
        if self.p > n or self.q > m:
            raise ValueError(f"{self.p}x{self.q} window does not fit a {n}x{m} matrix")


class InputMatrix:
    """Dense complex N x M signal matrix, immutable after construction."""

    __slots__ = ("array",)

    def __init__(self, values) -> None:
        arr = np.array(values, dtype=np.complex128, order="C")
        if arr.ndim != 2:
            raise ValueError(f"input matrix must be 2-D, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"input matrix must be non-empty, got shape {arr.shape}")
        arr.setflags(write=False)
        self.array = arr

    @property
    def n(self) -> int:
        return self.array.shape[0]

    @property
    def m(self) -> int:
        return self.array.shape[1]

    def at(self, r: int, c: int) -> complex:
        """Element A(r, c), 1-based."""
        if not (1 <= r <= self.n and 1 <= c <= self.m):
            raise IndexError(f"({r}, {c}) outside a {self.n}x{self.m} matrix")
        return self.array[r - 1, c - 1].item()

    @classmethod
    def random(cls, n: int, m: int, seed) -> "InputMatrix":
        """Seeded random matrix, re and im independently uniform in [-1, 1).

        Uses numpy's default PCG64 generator, so a given seed reproduces the
        same matrix everywhere; `seed` may also be an existing Generator.
        """
        rng = np.random.default_rng(seed)
        return cls(rng.uniform(-1.0, 1.0, (n, m)) + 1j * rng.uniform(-1.0, 1.0, (n, m)))


def as_input_matrix(values) -> InputMatrix:
    """Pass an InputMatrix through, wrap anything array-like."""
    return values if isinstance(values, InputMatrix) else InputMatrix(values)


class CovarianceMatrix:
    """Hermitian estimate stored as its packed upper triangle."""

    __slots__ = ("dim", "packed")

    def __init__(self, dim: int, packed=None) -> None:
        size = packed_size(dim)  # validates dim
        if size > MAX_PACKED_ENTRIES:
            raise ValueError(
                f"packed triangle of a {dim}x{dim} matrix needs {size} entries, "
                f"beyond the {MAX_PACKED_ENTRIES} capacity"
            )
        if packed is None:
            packed = np.zeros(size, dtype=np.complex128)
        else:
            packed = np.asarray(packed, dtype=np.complex128)
            if packed.shape != (size,):
                raise ValueError(
                    f"packed storage for dim {dim} must have shape ({size},), "
                    f"got {packed.shape}"
                )
        self.dim = dim
        self.packed = packed

    def at(self, r: int, c: int) -> complex:
        """Entry C(r, c); lower-triangle reads resolve through conjugation."""
        if r > c:
            return self.packed[packed_offset(c, r, self.dim)].conjugate().item()
        return self.packed[packed_offset(r, c, self.dim)].item()

    def dense(self) -> np.ndarray:
        """Full dim x dim array with C(c, r) = conj(C(r, c))."""
        rows, cols = np.triu_indices(self.dim)
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        out[cols, rows] = np.conj(self.packed)
        out[rows, cols] = self.packed  # written second so the diagonal keeps stored values
        return out


def rel_frobenius_distance(a, b) -> float:
    """Relative Frobenius distance ||a - b|| / ||b||; 0 when both are zero."""
    a = np.asarray(a)
    b = np.asarray(b)
    denom = float(np.linalg.norm(b))
    if denom == 0.0:
        return 0.0 if float(np.linalg.norm(a)) == 0.0 else float("inf")
    return float(np.linalg.norm(a - b)) / denom


def max_rel_diff(a, b) -> float:
    """Largest entry difference, relative to the larger of the two max moduli."""
    a = np.asarray(a)
    b = np.asarray(b)
    scale = max(float(np.abs(a).max(initial=0.0)), float(np.abs(b).max(initial=0.0)))
    if scale == 0.0:
        return 0.0
    return float(np.abs(a - b).max(initial=0.0)) / scale
