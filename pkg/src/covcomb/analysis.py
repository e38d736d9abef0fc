"""Closed-form operation counts for the serial sweep and the class engine.

Everything here is exact integer (or Fraction) arithmetic.  The halved
products in the formulas are always even before division, so they are
evaluated multiply-first with floor division and no rounding ever occurs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "CostModel",
    "serial_op_counts",
    "unique_mult_counts",
    "closed_form_counts",
    "upper_triangle_size",
    "write_coverage_split",
    "CSV_HEADER",
]

CSV_HEADER = ["N", "M", "P", "Q", "SM", "SA", "UM1", "UM2", "UM", "UMHAT", "RATIO"]


def _validate(n: int, m: int, p: int, q: int) -> None:
    if p < 1 or q < 1:
        raise ValueError(f"window dimensions must be positive, got {p}x{q}")
    if p > n or q > m:
        raise ValueError(f"{p}x{q} window does not fit a {n}x{m} matrix")


def serial_op_counts(n: int, m: int, p: int, q: int) -> tuple[int, int]:
    """Multiplications and additions of the plain window sweep.

    Model counts, using the exclusive (n-p)(m-q) window factor: each window
    costs p^2 q^2 products and as many accumulating additions.  The executing
    code sweeps (n-p+1)(m-q+1) placements and only the upper triangle; this
    closed form is the analysis yardstick, not an execution count.
    """
    _validate(n, m, p, q)
    sm = (n - p) * (m - q) * p * p * q * q
    return sm, sm


def unique_mult_counts(n: int, m: int, p: int, q: int) -> tuple[int, int]:
    """Multiplications the class engine spends on each class group.

    Group 1 (dr >= 0, dc >= 0):  sum of (n-dr)(m-dc) factorizes into
    [p(2n-p+1)/2] * [q(2m-q+1)/2]; group 2 (dr < 0, dc >= 1) into
    [(p-1)(2n-p)/2] * [(q-1)(2m-q)/2].
    """
    _validate(n, m, p, q)
    um1 = (p * (2 * n - p + 1) // 2) * (q * (2 * m - q + 1) // 2)
    um2 = ((p - 1) * (2 * n - p) // 2) * ((q - 1) * (2 * m - q) // 2)
    return um1, um2


@dataclass(frozen=True)
class CostModel:
    """Operation counts for one (n, m, p, q) problem instance.

    ratio is serial multiplications over the symmetrized class count
    um_hat = 2*um1; ratio_exact carries it without rounding.
    """

    n: int
    m: int
    p: int
    q: int
    sm: int
    sa: int
    um1: int
    um2: int
    um: int
    um_hat: int
    ratio: float
    ratio_exact: Fraction

    def csv_row(self) -> list:
        return [self.n, self.m, self.p, self.q, self.sm, self.sa,
                self.um1, self.um2, self.um, self.um_hat, self.ratio]


def closed_form_counts(n: int, m: int, p: int, q: int) -> CostModel:
    sm, sa = serial_op_counts(n, m, p, q)
    um1, um2 = unique_mult_counts(n, m, p, q)
    um_hat = 2 * um1
    ratio_exact = Fraction(sm, um_hat)
    return CostModel(
        n=n, m=m, p=p, q=q, sm=sm, sa=sa, um1=um1, um2=um2, um=um1 + um2,
        um_hat=um_hat, ratio=float(ratio_exact), ratio_exact=ratio_exact,
    )


def upper_triangle_size(p: int, q: int) -> int:
    """Stored entries of the p*q x p*q Hermitian output: s(s+1)/2."""
    if p < 1 or q < 1:
        raise ValueError(f"window dimensions must be positive, got {p}x{q}")
    s = p * q
    return s * (s + 1) // 2


def write_coverage_split(p: int, q: int) -> tuple[int, int]:
    """Totals of per-class write capacities for the two class groups.

    Group 1 sums to [p(p+1)/2][q(q+1)/2], group 2 to [p(p-1)/2][q(q-1)/2];
    together they equal the packed triangle size, one write-owner per slot.
    """
    if p < 1 or q < 1:
        raise ValueError(f"window dimensions must be positive, got {p}x{q}")
    eta1 = (p * (p + 1) // 2) * (q * (q + 1) // 2)
    eta2 = (p * (p - 1) // 2) * (q * (q - 1) // 2)
    return eta1, eta2
