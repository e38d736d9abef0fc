"""Offset classes of input-element pairs and the output indices they own.

Every product A(r1, c1) * conj(A(r2, c2)) that the windowed estimate ever
forms is classified by the pair's offset (dr, dc) = (r2 - r1, c2 - c1).  All
products of one class land on a single output diagonal, distinct classes
never touch the same packed slot, and together the classes tile the whole
upper triangle.  That disjointness is what lets the engine compute each class
once, in any order, on any thread, with plain unsynchronized writes.

This module enumerates the reduced class set (lower-triangle mirrors
dropped), the per-class pair and write counts, and the exact output indices a
given pair contributes to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .core import WindowSpec

__all__ = [
    "Combination",
    "ElementPair",
    "unique_combinations",
    "is_unique_combination",
    "pair_count",
    "max_writes",
    "element_pairs",
    "write_indices",
]


@dataclass(frozen=True)
class Combination:
    """Inter-element offset (dr, dc) naming one independent unit of work."""

    dr: int
    dc: int

    def diag_offset(self, p: int) -> int:
        """Output diagonal the class writes to: col - row = dc * p + dr."""
        return self.dc * p + self.dr


class ElementPair(NamedTuple):
    """Ordered pair of 1-based input positions, (first row, first col) etc."""

    first: tuple[int, int]
    second: tuple[int, int]


def unique_combinations(window: WindowSpec) -> list[Combination]:
    """All offset classes owning the upper triangle, in deterministic order.

    Group 1 sweeps dr in [0, p-1], dc in [0, q-1] row-major; group 2 follows
    with dr in [-(p-1), -1], dc in [1, q-1].  Total: p*q + (p-1)*(q-1).
    """
    p, q = window.p, window.q
    first = [Combination(dr, dc) for dr in range(p) for dc in range(q)]
    second = [Combination(dr, dc) for dr in range(-(p - 1), 0) for dc in range(1, q)]
    return first + second


def is_unique_combination(dr: int, dc: int, window: WindowSpec) -> bool:
    if 0 <= dr <= window.p - 1 and 0 <= dc <= window.q - 1:
        return True
    return -(window.p - 1) <= dr <= -1 and 1 <= dc <= window.q - 1


def pair_count(comb: Combination, n: int, m: int) -> int:
    """Element pairs of this class inside an n x m matrix: (n-|dr|)(m-|dc|).

    One complex multiplication per pair, so this is also the class's product
    count.
    """
    return (n - abs(comb.dr)) * (m - abs(comb.dc))


def max_writes(comb: Combination, window: WindowSpec) -> int:
    """Output slots the class owns: (p-|dr|)(q-|dc|) placements of the window
    around an interior pair."""
    if abs(comb.dr) >= window.p or abs(comb.dc) >= window.q:
        raise ValueError(f"offset ({comb.dr}, {comb.dc}) does not fit a {window.p}x{window.q} window")
    return (window.p - abs(comb.dr)) * (window.q - abs(comb.dc))


def element_pairs(comb: Combination, n: int, m: int) -> list[ElementPair]:
    """All in-bounds pairs at this offset, row-major by first element."""
    dr, dc = comb.dr, comb.dc
    r_lo, r_hi = 1 - min(dr, 0), n - max(dr, 0)
    c_lo, c_hi = 1 - min(dc, 0), m - max(dc, 0)
    return [
        ElementPair((r1, c1), (r1 + dr, c1 + dc))
        for r1 in range(r_lo, r_hi + 1)
        for c1 in range(c_lo, c_hi + 1)
    ]


def write_indices(pair, window: WindowSpec, n: int, m: int) -> list[tuple[int, int]]:
    """Output indices receiving this pair's product, one per containing window.

    Emission starts at the lowest-rightmost containing window and walks
    leftward (outer) and upward (inner), so successive inner steps yield
    consecutive slots on the class diagonal.  Row indices come from the first
    element's stack position, column indices from the second's.
    """
    (r1, c1), (r2, c2) = pair
    if not (1 <= r1 <= n and 1 <= c1 <= m and 1 <= r2 <= n and 1 <= c2 <= m):
        raise IndexError(f"pair {pair} leaves the {n}x{m} matrix")
    window.validate_for(n, m)
    dr, dc = r2 - r1, c2 - c1
    if not is_unique_combination(dr, dc, window):
        raise ValueError(
            f"offset ({dr}, {dc}) is not a unique combination for a {window.p}x{window.q} window"
        )
    p, q = window.p, window.q
    anchor_r_lo = max(1, max(r1, r2) - p + 1)
    anchor_r_hi = min(min(r1, r2), n - p + 1)
    anchor_c_lo = max(1, max(c1, c2) - q + 1)
    anchor_c_hi = min(min(c1, c2), m - q + 1)
    out = []
    for wc in range(anchor_c_hi, anchor_c_lo - 1, -1):
        row_base = p * (c1 - wc) + r1 + 1
        col_base = p * (c2 - wc) + r2 + 1
        for wr in range(anchor_r_hi, anchor_r_lo - 1, -1):
            out.append((row_base - wr, col_base - wr))
    return out
